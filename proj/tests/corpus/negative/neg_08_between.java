class Neg08 {
    void run(Connection conn, int lo, int hi) {
        PreparedStatement ps = conn.prepareStatement("SELECT label FROM warehouse WHERE qty BETWEEN ? AND ?");
        ps.setInt(1, lo);
        ps.setInt(2, hi);
    }
}
