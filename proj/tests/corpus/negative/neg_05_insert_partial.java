class Neg05 {
    void run(Connection conn, int id, String name) {
        PreparedStatement ps = conn.prepareStatement("INSERT INTO genre (id, name) VALUES (?,?)");
        ps.setInt(1, id);
        ps.setString(2, name);
    }
}
