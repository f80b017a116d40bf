class Pos27 {
    void run(Connection conn, long big) {
        PreparedStatement ps = conn.prepareStatement("UPDATE warehouse SET qty = ?");
        ps.setLong(1, big);
    }
}
