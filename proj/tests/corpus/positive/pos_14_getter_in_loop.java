class Pos14 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT s_i_id, s_w_id FROM stock");
        while (rs.next()) {
            int w = rs.getInt(3);
        }
    }
}
