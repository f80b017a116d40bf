class Neg11 {
    void run(Connection conn, long id) {
        String sql = "SELECT image_id FROM client_image " + "WHERE image_data IS NOT NULL AND contents IS NULL";
        PreparedStatement pst = conn.prepareStatement(sql);
        sql = "SELECT image_data FROM client_image " + "WHERE image_id = ?";
        pst = conn.prepareStatement(sql);
        pst.setLong(1, id);
    }
}
