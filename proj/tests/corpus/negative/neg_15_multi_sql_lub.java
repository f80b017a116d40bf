class Neg15 {
    void run(Connection conn, boolean recent) {
        String sql = "SELECT label, qty FROM warehouse";
        if (recent) {
            sql = "SELECT label FROM warehouse";
        }
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery(sql);
        rs.next();
        String label = rs.getString(1);
    }
}
