class Neg26 {
    void run(Connection connection, int id) {
        var statement = connection.prepareStatement("SELECT username FROM users WHERE id = ?");
        statement.setInt(1, id);
        var rs = statement.executeQuery();
        rs.next();
        String username = rs.getString("username");
    }
}
