#include "doctest.h"

#include <fstream>
#include <sstream>

#include "oopsie/typemap.hpp"

using namespace oopsie;

namespace {

Conversion classify(Direction dir, SqlKind kind, JavaAccessor a) {
    return default_conversion_table().classify(dir, make_sql_type(kind), a);
}

constexpr SqlKind kAllKinds[] = {
    SqlKind::Char,     SqlKind::Varchar, SqlKind::Integer,   SqlKind::Bigint,
    SqlKind::Smallint, SqlKind::Boolean, SqlKind::Date,      SqlKind::Time,
    SqlKind::Timestamp, SqlKind::Decimal, SqlKind::Numeric,  SqlKind::Double,
    SqlKind::Real};

constexpr JavaAccessor kAllAccessors[] = {
    JavaAccessor::Int,    JavaAccessor::Long,      JavaAccessor::Short,
    JavaAccessor::Float,  JavaAccessor::Double,    JavaAccessor::Boolean,
    JavaAccessor::String, JavaAccessor::Date,      JavaAccessor::Time,
    JavaAccessor::Timestamp, JavaAccessor::BigDecimal};

} // namespace

TEST_CASE("getter excerpt rows match exactly") {
    const ConversionTable& t = default_conversion_table();
    CHECK(t.recommended(Direction::Get, SqlKind::Char) ==
          std::set<JavaAccessor>{JavaAccessor::String});
    CHECK(t.recommended(Direction::Get, SqlKind::Varchar) ==
          std::set<JavaAccessor>{JavaAccessor::String});
    CHECK(t.recommended(Direction::Get, SqlKind::Integer) ==
          std::set<JavaAccessor>{JavaAccessor::Int, JavaAccessor::Long});
    CHECK(t.recommended(Direction::Get, SqlKind::Bigint) ==
          std::set<JavaAccessor>{JavaAccessor::Long});

    // supported columns of the same rows
    CHECK(classify(Direction::Get, SqlKind::Char, JavaAccessor::Int) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Get, SqlKind::Varchar, JavaAccessor::Boolean) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Get, SqlKind::Integer, JavaAccessor::String) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Get, SqlKind::Bigint, JavaAccessor::Int) ==
          Conversion::SupportedOnly);
}

TEST_CASE("classify three-way partition") {
    CHECK(classify(Direction::Get, SqlKind::Char, JavaAccessor::String) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Integer, JavaAccessor::Date) ==
          Conversion::Disallowed);
    CHECK(classify(Direction::Set, SqlKind::Integer, JavaAccessor::Int) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Set, SqlKind::Integer, JavaAccessor::String) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Set, SqlKind::Varchar, JavaAccessor::Boolean) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Set, SqlKind::Integer, JavaAccessor::Long) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Set, SqlKind::Date, JavaAccessor::Int) ==
          Conversion::Disallowed);
}

TEST_CASE("date/time and numeric rows") {
    CHECK(classify(Direction::Get, SqlKind::Date, JavaAccessor::Date) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Time, JavaAccessor::Time) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Timestamp, JavaAccessor::Timestamp) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Decimal, JavaAccessor::BigDecimal) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Numeric, JavaAccessor::BigDecimal) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Double, JavaAccessor::Double) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Real, JavaAccessor::Float) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Smallint, JavaAccessor::Short) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Boolean, JavaAccessor::Boolean) ==
          Conversion::Recommended);
    CHECK(classify(Direction::Get, SqlKind::Decimal, JavaAccessor::Int) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Get, SqlKind::Date, JavaAccessor::Timestamp) ==
          Conversion::SupportedOnly);
    CHECK(classify(Direction::Get, SqlKind::Date, JavaAccessor::Int) ==
          Conversion::Disallowed);
}

TEST_CASE("NUMERIC defaults equal DECIMAL defaults") {
    const ConversionTable& t = default_conversion_table();
    for (Direction dir : {Direction::Get, Direction::Set}) {
        CHECK(t.recommended(dir, SqlKind::Numeric) == t.recommended(dir, SqlKind::Decimal));
        CHECK(t.supported(dir, SqlKind::Numeric) == t.supported(dir, SqlKind::Decimal));
    }
}

TEST_CASE("recommended and supported are disjoint for every key") {
    const ConversionTable& t = default_conversion_table();
    for (SqlKind kind : kAllKinds) {
        for (Direction dir : {Direction::Get, Direction::Set}) {
            for (JavaAccessor a : kAllAccessors) {
                bool rec = t.recommended(dir, kind).count(a) > 0;
                bool sup = t.supported(dir, kind).count(a) > 0;
                CHECK_FALSE((rec && sup));
            }
        }
    }
}

TEST_CASE("override replaces one cell and keeps disjointness") {
    ConversionTable t = load_conversion_table("getter.recommended.BIGINT = long,String");
    CHECK(t.recommended(Direction::Get, SqlKind::Bigint) ==
          std::set<JavaAccessor>{JavaAccessor::Long, JavaAccessor::String});
    CHECK(t.classify(Direction::Get, make_sql_type(SqlKind::Bigint), JavaAccessor::String) ==
          Conversion::Recommended);
    CHECK(t.supported(Direction::Get, SqlKind::Bigint).count(JavaAccessor::String) == 0);
    // untouched cells keep defaults
    CHECK(t.recommended(Direction::Get, SqlKind::Char) ==
          std::set<JavaAccessor>{JavaAccessor::String});
}

TEST_CASE("config format: comments, blank lines, errors") {
    CHECK_NOTHROW(load_conversion_table("# comment\n\nsetter.supported.DATE = String\n"));
    try {
        load_conversion_table("getter.recommended.NOPE = int");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind == ConfigError::Kind::UnknownSqlKind);
    }
    try {
        load_conversion_table("getter.recommended.INTEGER = NotAType");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind == ConfigError::Kind::UnknownJavaAccessor);
    }
    try {
        load_conversion_table("whatever");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind == ConfigError::Kind::Syntax);
        CHECK(e.line == 1);
    }
}

TEST_CASE("default table snapshot is the shipped mapping file") {
    std::ifstream in(std::string(OOPSIE_DATA_DIR) + "/default_conversions.map");
    REQUIRE_MESSAGE(in.good(), "missing tests/data/default_conversions.map");
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(render_conversion_table(default_conversion_table()) == buf.str());
    // the file reloads to the same table
    ConversionTable reloaded = load_conversion_table(std::string_view(buf.str()));
    CHECK(render_conversion_table(reloaded) == buf.str());
}
