class SalaryReport {
    void run(Connection conn) {
        String sql = "SELECT name FROM ";
        sql += "employee WHERE salary < ?";
        PreparedStatement ps = conn.prepareStatement(sql);
        ps.setInt(1, 40000);
        ResultSet rs = ps.executeQuery();
        int name = rs.getInt("name");
    }
}
