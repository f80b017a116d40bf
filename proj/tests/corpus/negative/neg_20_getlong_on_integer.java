class Neg20 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT qty FROM warehouse");
        rs.next();
        long quantity = rs.getLong("qty");
    }
}
