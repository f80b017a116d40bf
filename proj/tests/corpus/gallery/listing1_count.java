class UserCount {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        String sql = "select count(*) from USERS";
        ResultSet resultSet = stmt.executeQuery(sql);
        resultSet.next();
        int result = resultSet.getInt(1);
    }
}
