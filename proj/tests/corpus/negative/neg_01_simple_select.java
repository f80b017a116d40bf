class Neg01 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT label FROM warehouse");
        rs.next();
        String label = rs.getString("label");
    }
}
