class Pos26 {
    void run(Connection conn) {
        PreparedStatement ps = conn.prepareStatement("INSERT INTO genre (id, name) VALUES (?,?)");
        ps.setInt(1, 4);
        ps.setInt(2, 1);
    }
}
