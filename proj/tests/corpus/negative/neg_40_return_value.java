class Neg40 {
    int currentQuantity(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT qty FROM warehouse");
        rs.next();
        int quantity = rs.getInt("qty");
        return quantity;
    }
}
