class SequentialBind {
    void run(Connection conn, int quantity, String id) {
        PreparedStatement ps = conn.prepareStatement("UPDATE stock SET s_quantity = ? WHERE s_dist_01 = ?");
        int ctr = 1;
        ps.setInt(ctr++, quantity);
        ps.setString(ctr++, id);
    }
}
