class Neg09 {
    void run(Connection conn, String a, String b) {
        PreparedStatement ps = conn.prepareStatement("SELECT qty FROM warehouse WHERE label IN (?, ?)");
        ps.setString(1, a);
        ps.setString(2, b);
    }
}
