class Neg19 {
    @Sql(out = {"DECIMAL total"}) ResultSet fetchTotals(Connection conn) {
        Statement stmt = conn.createStatement();
        return stmt.executeQuery("SELECT total FROM invoice");
    }

    void run(Connection conn) {
        ResultSet rs = fetchTotals(conn);
        rs.next();
        BigDecimal total = rs.getBigDecimal("total");
    }
}
