class Pos24 {
    void run(Connection conn) {
        PreparedStatement ps = conn.prepareStatement("SELECT label FROM warehouse WHERE qty > ?");
        ps.setString(1, "5");
    }
}
