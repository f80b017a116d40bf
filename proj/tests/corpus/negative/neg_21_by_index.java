class Neg21 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT qty, label FROM warehouse");
        rs.next();
        int quantity = rs.getInt(1);
        String label = rs.getString(2);
    }
}
