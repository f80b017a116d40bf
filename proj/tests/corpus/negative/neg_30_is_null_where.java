class Neg30 {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT image_data FROM client_image WHERE contents IS NULL");
        rs.next();
        String data = rs.getString("image_data");
    }
}
