class Pos04 {
    void run(Connection conn, int itemId, int warehouseId) {
        PreparedStatement ps = conn.prepareStatement("SELECT s_quantity FROM stock WHERE s_i_id = ? AND s_w_id = ?");
        ps = conn.prepareStatement("SELECT s_quantity FROM stock WHERE s_i_id = ?");
        ps.setInt(1, itemId);
        ps.setInt(2, warehouseId);
    }
}
