class Neg23 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT c_date, c_time, c_ts FROM typetest");
        rs.next();
        Date d = rs.getDate("c_date");
        Time t = rs.getTime("c_time");
        Timestamp ts = rs.getTimestamp("c_ts");
    }
}
