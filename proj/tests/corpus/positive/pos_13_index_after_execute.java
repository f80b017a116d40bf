class Pos13 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        stmt.execute("SELECT total FROM invoice");
        ResultSet rs = stmt.getResultSet();
        rs.next();
        BigDecimal v = rs.getBigDecimal(2);
    }
}
