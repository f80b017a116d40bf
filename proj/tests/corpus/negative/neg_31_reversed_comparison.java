class Neg31 {
    void run(Connection conn, int threshold) {
        PreparedStatement ps = conn.prepareStatement("SELECT label FROM warehouse WHERE ? < qty");
        ps.setInt(1, threshold);
    }
}
