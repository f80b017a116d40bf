class RoomDao {
    void getById(Connection connection, int id) {
        var statement = connection.prepareStatement("SELECT * FROM ROOMS WHERE ID = ?");
        statement.setBigDecimal(1, id);
        ResultSet resultSet = statement.executeQuery();
        if (resultSet.next()) {
            createRoom(resultSet);
        }
    }

    void createRoom(@Sql(out = {"DECIMAL ID", "VARCHAR ROOM_TYPE", "INTEGER PRICE", "VARCHAR BOOKED"}) ResultSet resultSet) {
        int roomId = resultSet.getInt("ID");
        String roomType = resultSet.getString("ROOM_TYPE");
        int price = resultSet.getInt("PRICE");
        boolean booked = resultSet.getBoolean("BOOKED");
    }
}
