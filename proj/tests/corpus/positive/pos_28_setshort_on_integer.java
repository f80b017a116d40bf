class Pos28 {
    void run(Connection conn, short small) {
        PreparedStatement ps = conn.prepareStatement("DELETE FROM warehouse WHERE qty = ?");
        ps.setShort(1, small);
    }
}
