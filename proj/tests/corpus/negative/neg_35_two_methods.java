class Neg35 {
    void readLabels(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT label FROM warehouse");
        rs.next();
        String label = rs.getString(1);
    }

    void bumpQuantity(Connection conn, int quantity) {
        PreparedStatement ps = conn.prepareStatement("UPDATE warehouse SET qty = ?");
        ps.setInt(1, quantity);
    }
}
