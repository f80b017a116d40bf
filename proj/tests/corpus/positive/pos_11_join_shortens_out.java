class Pos11 {
    void run(Connection conn, boolean wide) {
        Statement stmt = conn.createStatement();
        ResultSet rs = null;
        if (wide) {
            rs = stmt.executeQuery("SELECT label, qty FROM warehouse");
        } else {
            rs = stmt.executeQuery("SELECT label FROM warehouse");
        }
        rs.next();
        int q = rs.getInt("qty");
    }
}
