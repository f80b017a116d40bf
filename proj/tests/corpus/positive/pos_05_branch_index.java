class Pos05 {
    void run(Connection conn, boolean flag, int value) {
        PreparedStatement ps = conn.prepareStatement("UPDATE stock SET s_quantity = ? WHERE s_i_id = ?");
        int idx = 1;
        if (flag) {
            idx = 1;
        } else {
            idx = 3;
        }
        ps.setInt(idx, value);
    }
}
