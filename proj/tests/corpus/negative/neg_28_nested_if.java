class Neg28 {
    void run(Connection conn, boolean a, boolean b) {
        Statement stmt = conn.createStatement();
        ResultSet rs = null;
        if (a) {
            if (b) {
                rs = stmt.executeQuery("SELECT label, qty FROM warehouse");
            } else {
                rs = stmt.executeQuery("SELECT label, qty FROM warehouse");
            }
        } else {
            rs = stmt.executeQuery("SELECT label FROM warehouse");
        }
        rs.next();
        String label = rs.getString("label");
    }
}
