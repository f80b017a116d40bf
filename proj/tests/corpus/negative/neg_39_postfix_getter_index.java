class Neg39 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT label, qty FROM warehouse");
        rs.next();
        int col = 1;
        String label = rs.getString(col++);
        int quantity = rs.getInt(col);
    }
}
