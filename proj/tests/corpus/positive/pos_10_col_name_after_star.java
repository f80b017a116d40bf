class Pos10 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT * FROM genre");
        rs.next();
        String title = rs.getString("title");
    }
}
