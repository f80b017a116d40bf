class Pos03 {
    void run(Connection conn, int a, int b, int c) {
        PreparedStatement ps = conn.prepareStatement("UPDATE stock SET s_quantity = ? WHERE s_i_id = ?");
        int ctr = 1;
        ps.setInt(ctr++, a);
        ps.setInt(ctr++, b);
        ps.setInt(ctr++, c);
    }
}
