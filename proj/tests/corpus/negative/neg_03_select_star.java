class Neg03 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT * FROM stock");
        rs.next();
        int itemId = rs.getInt("s_i_id");
        String d1 = rs.getString("s_dist_01");
        int quantity = rs.getInt(3);
    }
}
