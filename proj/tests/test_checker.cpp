#include "doctest.h"

#include <set>
#include <tuple>

#include "oopsie/checker.hpp"
#include "oopsie/render.hpp"
#include "testutil.hpp"

using namespace oopsie;
using testutil::check_corpus_file;
using testutil::check_source;
using testutil::corpus_schema;
using testutil::line_of;
using testutil::read_file;

namespace {

std::vector<std::pair<int, DiagCode>> lines_and_codes(const CheckResult& result) {
    std::vector<std::pair<int, DiagCode>> out;
    for (const Diagnostic& d : result.diagnostics) out.emplace_back(d.span.line, d.code);
    return out;
}

int count_code(const CheckResult& result, DiagCode code) {
    int n = 0;
    for (const Diagnostic& d : result.diagnostics) {
        if (d.code == code) ++n;
    }
    return n;
}

SourceSpan at(int line) { return {"test.java", line, 1}; }

} // namespace

// --- qualifier introduction --------------------------------------------------

TEST_CASE("introduce: extractable query becomes a Sql qualifier") {
    SchemaCatalog catalog = corpus_schema();
    IntroduceResult r = introduce_statement_qualifier(
        ConstValue::of_string("SELECT name FROM employee WHERE salary < ?"), catalog,
        Mode::Sound, at(1));
    CHECK(r.diagnostics.empty());
    REQUIRE(r.qualifier.is_sql());
    REQUIRE(r.qualifier.sig.in.size() == 1);
    CHECK(r.qualifier.sig.in[0].kind == SqlKind::Integer);
    REQUIRE(r.qualifier.sig.out.size() == 1);
    CHECK(r.qualifier.sig.out[0].name == "name");
    CHECK(r.qualifier.sig.out[0].type.kind == SqlKind::Varchar);
}

TEST_CASE("introduce: unknown table is malformed SQL in both modes") {
    SchemaCatalog catalog = corpus_schema();
    for (Mode mode : {Mode::Sound, Mode::Degraded}) {
        IntroduceResult r = introduce_statement_qualifier(
            ConstValue::of_string("Select * from employe"), catalog, mode, at(2));
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].code == DiagCode::MalformedSql);
        CHECK(r.diagnostics[0].severity == Severity::Error);
        CHECK(r.qualifier.kind == SqlQualifier::Kind::Unsupported);
    }
}

TEST_CASE("introduce: unextractable string degrades per mode") {
    SchemaCatalog catalog = corpus_schema();
    IntroduceResult sound =
        introduce_statement_qualifier(ConstValue::top(), catalog, Mode::Sound, at(3));
    REQUIRE(sound.diagnostics.size() == 1);
    CHECK(sound.diagnostics[0].code == DiagCode::UnextractableSql);
    CHECK(sound.diagnostics[0].severity == Severity::Error);
    CHECK(sound.qualifier.kind == SqlQualifier::Kind::Unsupported);

    IntroduceResult degraded =
        introduce_statement_qualifier(ConstValue::top(), catalog, Mode::Degraded, at(3));
    REQUIRE(degraded.diagnostics.size() == 1);
    CHECK(degraded.diagnostics[0].severity == Severity::Warning);
    CHECK(degraded.qualifier.kind == SqlQualifier::Kind::Unsupported);
}

TEST_CASE("introduce: unsupported construct degrades per mode") {
    SchemaCatalog catalog = corpus_schema();
    IntroduceResult sound = introduce_statement_qualifier(
        ConstValue::of_string("select count(*) from users"), catalog, Mode::Sound, at(4));
    REQUIRE(sound.diagnostics.size() == 1);
    CHECK(sound.diagnostics[0].code == DiagCode::UnsupportedSql);
    CHECK(sound.diagnostics[0].severity == Severity::Error);

    IntroduceResult degraded = introduce_statement_qualifier(
        ConstValue::of_string("select count(*) from users"), catalog, Mode::Degraded, at(4));
    CHECK(degraded.diagnostics[0].severity == Severity::Warning);
    CHECK(degraded.qualifier.kind == SqlQualifier::Kind::Unsupported);
}

TEST_CASE("introduce: multiple known strings meet at their least upper bound") {
    SchemaCatalog catalog = corpus_schema();
    ConstValue both = ConstValue::known_strings(
        {"SELECT label, qty FROM warehouse", "SELECT label FROM warehouse"});
    IntroduceResult r = introduce_statement_qualifier(both, catalog, Mode::Sound, at(5));
    CHECK(r.diagnostics.empty());
    REQUIRE(r.qualifier.is_sql());
    REQUIRE(r.qualifier.sig.out.size() == 1);
    CHECK(r.qualifier.sig.out[0].name == "label");

    // any failing member poisons the set
    ConstValue mixed = ConstValue::known_strings(
        {"SELECT label FROM warehouse", "SELECT label FROM nowhere"});
    IntroduceResult bad = introduce_statement_qualifier(mixed, catalog, Mode::Sound, at(6));
    CHECK(bad.qualifier.kind == SqlQualifier::Kind::Unsupported);
    REQUIRE(bad.diagnostics.size() == 1);
    CHECK(bad.diagnostics[0].code == DiagCode::MalformedSql);
}

// --- access verification ------------------------------------------------------

namespace {

SqlQualifier warehouse_result() {
    QuerySignature sig;
    sig.out = {{"label", make_sql_type(SqlKind::Varchar)},
               {"qty", make_sql_type(SqlKind::Integer)}};
    return SqlQualifier::sql(sig);
}

SqlQualifier one_int_param() {
    QuerySignature sig;
    sig.in = {make_sql_type(SqlKind::Integer)};
    return SqlQualifier::sql(sig);
}

} // namespace

TEST_CASE("verify_getter: the three getter failures") {
    const ConversionTable& table = default_conversion_table();
    SqlQualifier rs = warehouse_result();

    AccessCheck wrong_type = verify_getter(rs, JavaAccessor::Int, false, ConstValue::of_int(1),
                                           table, Mode::Sound, false, at(10));
    REQUIRE(wrong_type.diagnostics.size() == 1);
    CHECK(wrong_type.diagnostics[0].code == DiagCode::GetterTypeMismatch);
    CHECK(wrong_type.counted_checked);

    AccessCheck oob = verify_getter(rs, JavaAccessor::String, false, ConstValue::of_int(3),
                                    table, Mode::Sound, false, at(11));
    REQUIRE(oob.diagnostics.size() == 1);
    CHECK(oob.diagnostics[0].code == DiagCode::ColumnIndexOob);

    AccessCheck unknown = verify_getter(rs, JavaAccessor::String, true,
                                        ConstValue::of_string("id"), table, Mode::Sound, false,
                                        at(12));
    REQUIRE(unknown.diagnostics.size() == 1);
    CHECK(unknown.diagnostics[0].code == DiagCode::ColumnNameUnknown);

    AccessCheck ok = verify_getter(rs, JavaAccessor::String, true,
                                   ConstValue::of_string("LABEL"), table, Mode::Sound, false,
                                   at(13));
    CHECK(ok.diagnostics.empty());
}

TEST_CASE("verify_setter: type mismatch and index bounds") {
    const ConversionTable& table = default_conversion_table();
    SqlQualifier ps = one_int_param();

    AccessCheck mismatch = verify_setter(ps, JavaAccessor::String, ConstValue::of_int(1), table,
                                         Mode::Sound, false, at(20));
    REQUIRE(mismatch.diagnostics.size() == 1);
    CHECK(mismatch.diagnostics[0].code == DiagCode::SetterTypeMismatch);
    CHECK(mismatch.diagnostics[0].severity == Severity::Error);
    REQUIRE(mismatch.diagnostics[0].expected.has_value());
    CHECK(*mismatch.diagnostics[0].expected == "setInt");
    CHECK(*mismatch.diagnostics[0].actual == "setString");

    AccessCheck oob = verify_setter(ps, JavaAccessor::String, ConstValue::of_int(2), table,
                                    Mode::Sound, false, at(21));
    REQUIRE(oob.diagnostics.size() == 1);
    CHECK(oob.diagnostics[0].code == DiagCode::ParamIndexOob);
    CHECK(oob.diagnostics[0].message ==
          "parameter index 2 out of bounds (statement has 1 parameters)");
}

TEST_CASE("verify: getInt on a DECIMAL column is flagged") {
    QuerySignature sig;
    sig.out = {{"ID", make_sql_type(SqlKind::Decimal)}};
    AccessCheck check = verify_getter(SqlQualifier::sql(sig), JavaAccessor::Int, true,
                                      ConstValue::of_string("ID"), default_conversion_table(),
                                      Mode::Sound, false, at(30));
    REQUIRE(check.diagnostics.size() == 1);
    CHECK(check.diagnostics[0].code == DiagCode::GetterTypeMismatch);
}

TEST_CASE("verify: multi-valued index checks every member, one error each") {
    SqlQualifier ps = one_int_param();
    AccessCheck check = verify_setter(ps, JavaAccessor::Int, ConstValue::known_ints({1, 3}),
                                      default_conversion_table(), Mode::Sound, false, at(40));
    REQUIRE(check.diagnostics.size() == 1);  // member 1 passes, member 3 fails once
    CHECK(check.diagnostics[0].code == DiagCode::ParamIndexOob);

    AccessCheck both_bad = verify_setter(ps, JavaAccessor::Int, ConstValue::known_ints({0, 5}),
                                         default_conversion_table(), Mode::Sound, false, at(41));
    CHECK(both_bad.diagnostics.size() == 2);
}

TEST_CASE("verify: unextractable index severity follows the mode") {
    SqlQualifier ps = one_int_param();
    AccessCheck sound = verify_setter(ps, JavaAccessor::Int, ConstValue::top(),
                                      default_conversion_table(), Mode::Sound, false, at(50));
    REQUIRE(sound.diagnostics.size() == 1);
    CHECK(sound.diagnostics[0].code == DiagCode::UnextractableIndex);
    CHECK(sound.diagnostics[0].severity == Severity::Error);

    AccessCheck degraded = verify_setter(ps, JavaAccessor::Int, ConstValue::top(),
                                         default_conversion_table(), Mode::Degraded, false, at(50));
    CHECK(degraded.diagnostics[0].severity == Severity::Warning);
}

TEST_CASE("verify: receiver lattice extremes") {
    const ConversionTable& table = default_conversion_table();
    AccessCheck unknown_sound = verify_getter(SqlQualifier::unknown(), JavaAccessor::Int, false,
                                              ConstValue::of_int(1), table, Mode::Sound, false,
                                              at(60));
    REQUIRE(unknown_sound.diagnostics.size() == 1);
    CHECK(unknown_sound.diagnostics[0].code == DiagCode::NonlocalAccess);
    CHECK(unknown_sound.counted_out_of_scope);

    AccessCheck unknown_degraded = verify_getter(SqlQualifier::unknown(), JavaAccessor::Int,
                                                 false, ConstValue::of_int(1), table,
                                                 Mode::Degraded, false, at(60));
    REQUIRE(unknown_degraded.diagnostics.size() == 1);
    CHECK(unknown_degraded.diagnostics[0].code == DiagCode::OutOfScope);
    CHECK(unknown_degraded.diagnostics[0].severity == Severity::Info);

    AccessCheck unsupported_sound = verify_getter(SqlQualifier::unsupported(), JavaAccessor::Int,
                                                  false, ConstValue::of_int(1), table,
                                                  Mode::Sound, false, at(61));
    REQUIRE(unsupported_sound.diagnostics.size() == 1);
    CHECK(unsupported_sound.diagnostics[0].code == DiagCode::UncheckedAccess);
    CHECK(unsupported_sound.counted_unchecked);

    AccessCheck unsupported_degraded =
        verify_getter(SqlQualifier::unsupported(), JavaAccessor::Int, false,
                      ConstValue::of_int(1), table, Mode::Degraded, false, at(61));
    CHECK(unsupported_degraded.diagnostics.empty());
}

TEST_CASE("verify: supported-as-warning downgrades driver-dependent conversions only") {
    SqlQualifier ps = one_int_param();
    AccessCheck supported = verify_setter(ps, JavaAccessor::String, ConstValue::of_int(1),
                                          default_conversion_table(), Mode::Sound, true, at(70));
    REQUIRE(supported.diagnostics.size() == 1);
    CHECK(supported.diagnostics[0].severity == Severity::Warning);

    AccessCheck disallowed = verify_setter(ps, JavaAccessor::Date, ConstValue::of_int(1),
                                           default_conversion_table(), Mode::Sound, true, at(71));
    REQUIRE(disallowed.diagnostics.size() == 1);
    CHECK(disallowed.diagnostics[0].severity == Severity::Error);
}

// --- gallery programs ---------------------------------------------------------

TEST_CASE("gallery: concatenated query flags exactly the getter") {
    SchemaCatalog catalog = corpus_schema();
    std::string source = read_file(testutil::corpus_path("gallery/fig3.java"));
    CheckResult result = check_corpus_file("gallery/fig3.java", Mode::Sound, catalog);
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == DiagCode::GetterTypeMismatch);
    CHECK(result.diagnostics[0].severity == Severity::Error);
    CHECK(result.diagnostics[0].span.line == line_of(source, "rs.getInt(\"name\")"));
    CHECK(result.stats.checked_getters == 1);
    CHECK(result.stats.checked_setters == 1);
}

TEST_CASE("gallery: getter trio") {
    SchemaCatalog catalog = corpus_schema();
    std::string source = read_file(testutil::corpus_path("gallery/ex22_getters.java"));
    CheckResult result = check_corpus_file("gallery/ex22_getters.java", Mode::Sound, catalog);
    auto got = lines_and_codes(result);
    std::vector<std::pair<int, DiagCode>> expected{
        {line_of(source, "rs.getInt(1)"), DiagCode::GetterTypeMismatch},
        {line_of(source, "rs.getString(3)"), DiagCode::ColumnIndexOob},
        {line_of(source, "rs.getString(\"id\")"), DiagCode::ColumnNameUnknown},
    };
    CHECK(got == expected);
}

TEST_CASE("gallery: setter pair") {
    SchemaCatalog catalog = corpus_schema();
    std::string source = read_file(testutil::corpus_path("gallery/ex23_setters.java"));
    CheckResult result = check_corpus_file("gallery/ex23_setters.java", Mode::Sound, catalog);
    auto got = lines_and_codes(result);
    std::vector<std::pair<int, DiagCode>> expected{
        {line_of(source, "ps.setString(1"), DiagCode::SetterTypeMismatch},
        {line_of(source, "ps.setString(2"), DiagCode::ParamIndexOob},
    };
    CHECK(got == expected);
}

TEST_CASE("gallery: loop and branch scan is clean") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_corpus_file("gallery/ex41_controlflow.java", Mode::Sound, catalog);
    CHECK(result.diagnostics.empty());
    CHECK(result.stats.checked_getters == 2);
    CHECK(result.stats.checked_setters == 2);
}

TEST_CASE("gallery: reassigned prepared statement is checked against the newest SQL") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_corpus_file("gallery/ex42_reassign.java", Mode::Sound, catalog);
    CHECK(result.diagnostics.empty());
}

TEST_CASE("gallery: sequential binding with ctr++ is clean") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_corpus_file("gallery/ex44_increment.java", Mode::Sound, catalog);
    CHECK(result.diagnostics.empty());
}

TEST_CASE("gallery: annotated helper flags exactly the two wrong getters") {
    SchemaCatalog catalog = corpus_schema();
    std::string source = read_file(testutil::corpus_path("gallery/ex45_nonlocal.java"));
    CheckResult result = check_corpus_file("gallery/ex45_nonlocal.java", Mode::Sound, catalog);
    auto got = lines_and_codes(result);
    std::vector<std::pair<int, DiagCode>> expected{
        {line_of(source, "resultSet.getInt(\"ID\")"), DiagCode::GetterTypeMismatch},
        {line_of(source, "resultSet.getBoolean(\"BOOKED\")"), DiagCode::GetterTypeMismatch},
    };
    CHECK(got == expected);
}

TEST_CASE("gallery: three setter bugs in one insert") {
    SchemaCatalog catalog = corpus_schema();
    std::string source = read_file(testutil::corpus_path("gallery/ex46_insertgenre.java"));
    CheckResult result = check_corpus_file("gallery/ex46_insertgenre.java", Mode::Sound, catalog);
    auto got = lines_and_codes(result);
    std::vector<std::pair<int, DiagCode>> expected{
        {line_of(source, "ps.setString(1"), DiagCode::SetterTypeMismatch},
        {line_of(source, "ps.setInt(2"), DiagCode::SetterTypeMismatch},
        {line_of(source, "ps.setString(3"), DiagCode::ParamIndexOob},
    };
    CHECK(got == expected);
}

TEST_CASE("gallery: boolean into the VARCHAR room column") {
    SchemaCatalog catalog = corpus_schema();
    std::string source = read_file(testutil::corpus_path("gallery/listing1_rooms.java"));
    CheckResult result = check_corpus_file("gallery/listing1_rooms.java", Mode::Sound, catalog);
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == DiagCode::SetterTypeMismatch);
    CHECK(result.diagnostics[0].span.line == line_of(source, "ps.setBoolean(4"));
}

TEST_CASE("gallery: aggregate query degrades, accesses follow the mode") {
    SchemaCatalog catalog = corpus_schema();
    std::string source = read_file(testutil::corpus_path("gallery/listing1_count.java"));

    CheckResult sound = check_corpus_file("gallery/listing1_count.java", Mode::Sound, catalog);
    auto got = lines_and_codes(sound);
    std::vector<std::pair<int, DiagCode>> expected{
        {line_of(source, "stmt.executeQuery(sql)"), DiagCode::UnsupportedSql},
        {line_of(source, "resultSet.getInt(1)"), DiagCode::UncheckedAccess},
    };
    CHECK(got == expected);

    CheckResult degraded =
        check_corpus_file("gallery/listing1_count.java", Mode::Degraded, catalog);
    REQUIRE(degraded.diagnostics.size() == 1);
    CHECK(degraded.diagnostics[0].code == DiagCode::UnsupportedSql);
    CHECK(degraded.diagnostics[0].severity == Severity::Warning);
    CHECK(degraded.stats.unchecked_accesses == 1);
}

// --- flow-sensitive refinement -------------------------------------------------

TEST_CASE("transfer: execute refines the receiver for getResultSet") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_source(R"(
class A {
    void run(Connection conn) {
        Statement stmt = conn.createStatement();
        stmt.execute("SELECT total FROM invoice");
        ResultSet rs = stmt.getResultSet();
        rs.next();
        BigDecimal total = rs.getBigDecimal("total");
    }
}
)",
                                      Mode::Sound, catalog);
    CHECK(result.diagnostics.empty());
    CHECK(result.stats.checked_getters == 1);
}

TEST_CASE("transfer: join keeps the common out prefix") {
    SchemaCatalog catalog = corpus_schema();
    // reading the shared prefix is fine; reading the dropped column is not
    CheckResult clean = check_source(R"(
class A {
    void run(Connection conn, boolean wide) {
        Statement stmt = conn.createStatement();
        ResultSet rs = null;
        if (wide) {
            rs = stmt.executeQuery("SELECT label, qty FROM warehouse");
        } else {
            rs = stmt.executeQuery("SELECT label FROM warehouse");
        }
        rs.next();
        String label = rs.getString("label");
    }
}
)",
                                     Mode::Sound, catalog);
    CHECK(clean.diagnostics.empty());

    CheckResult dropped = check_source(R"(
class A {
    void run(Connection conn, boolean wide) {
        Statement stmt = conn.createStatement();
        ResultSet rs = null;
        if (wide) {
            rs = stmt.executeQuery("SELECT label, qty FROM warehouse");
        } else {
            rs = stmt.executeQuery("SELECT label FROM warehouse");
        }
        rs.next();
        int qty = rs.getInt("qty");
    }
}
)",
                                       Mode::Sound, catalog);
    REQUIRE(dropped.diagnostics.size() == 1);
    CHECK(dropped.diagnostics[0].code == DiagCode::ColumnNameUnknown);
}

TEST_CASE("transfer: non-local receivers per mode") {
    SchemaCatalog catalog = corpus_schema();
    const char* source = R"(
class A {
    void use(PreparedStatement ps) {
        ps.setInt(1, 5);
    }
}
)";
    CheckResult sound = check_source(source, Mode::Sound, catalog);
    REQUIRE(sound.diagnostics.size() == 1);
    CHECK(sound.diagnostics[0].code == DiagCode::NonlocalAccess);
    CHECK(sound.stats.out_of_scope == 1);

    CheckResult degraded = check_source(source, Mode::Degraded, catalog);
    REQUIRE(degraded.diagnostics.size() == 1);
    CHECK(degraded.diagnostics[0].code == DiagCode::OutOfScope);
    CHECK(degraded.diagnostics[0].severity == Severity::Info);
    CHECK(degraded.stats.out_of_scope == 1);
}

// --- manual annotations --------------------------------------------------------

TEST_CASE("annotations: unknown argument fails the declared contract") {
    SchemaCatalog catalog = corpus_schema();
    const char* source = R"(
class A {
    void caller(ResultSet outside) {
        helper(outside);
    }
    void helper(@Sql(out = {"VARCHAR label"}) ResultSet rs) {
        String label = rs.getString("label");
    }
}
)";
    for (Mode mode : {Mode::Sound, Mode::Degraded}) {
        CheckResult result = check_source(source, mode, catalog);
        CHECK(count_code(result, DiagCode::AnnotationArgMismatch) == 1);
    }
}

TEST_CASE("annotations: an out list extending the declared one is accepted") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_source(R"(
class A {
    void caller(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT label, qty FROM warehouse");
        helper(rs);
    }
    void helper(@Sql(out = {"VARCHAR label"}) ResultSet rs) {
        String label = rs.getString("label");
    }
}
)",
                                      Mode::Sound, catalog);
    CHECK(result.diagnostics.empty());
}

TEST_CASE("annotations: mismatched argument signature is flagged") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_source(R"(
class A {
    void caller(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT qty FROM warehouse");
        helper(rs);
    }
    void helper(@Sql(out = {"VARCHAR label"}) ResultSet rs) {
        String label = rs.getString("label");
    }
}
)",
                                      Mode::Sound, catalog);
    REQUIRE(count_code(result, DiagCode::AnnotationArgMismatch) == 1);
    const Diagnostic& d = result.diagnostics[0];
    REQUIRE(d.expected.has_value());
    CHECK(*d.expected == "@Sql(out = {\"VARCHAR label\"})");
    CHECK(*d.actual == "@Sql(out = {\"INTEGER qty\"})");
}

TEST_CASE("annotations: return contract checked and adopted at calls") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult clean = check_source(R"(
class A {
    @Sql(out = {"DECIMAL total"}) ResultSet totals(Connection conn) {
        Statement stmt = conn.createStatement();
        return stmt.executeQuery("SELECT total FROM invoice");
    }
    void run(Connection conn) {
        ResultSet rs = totals(conn);
        rs.next();
        BigDecimal total = rs.getBigDecimal("total");
    }
}
)",
                                     Mode::Sound, catalog);
    CHECK(clean.diagnostics.empty());

    CheckResult broken = check_source(R"(
class A {
    @Sql(out = {"DECIMAL total"}) ResultSet totals(Connection conn) {
        Statement stmt = conn.createStatement();
        return stmt.executeQuery("SELECT id FROM invoice");
    }
}
)",
                                      Mode::Sound, catalog);
    REQUIRE(broken.diagnostics.size() == 1);
    CHECK(broken.diagnostics[0].code == DiagCode::AnnotationReturnMismatch);
}

TEST_CASE("annotations: parameters start with the declared qualifier inside the method") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_source(R"(
class A {
    void helper(@Sql(in = {"INTEGER"}, out = {"VARCHAR label"}) PreparedStatement ps) {
        ps.setInt(1, 3);
        ps.setString(2, "x");
    }
}
)",
                                      Mode::Sound, catalog);
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].code == DiagCode::ParamIndexOob);
}

// --- whole-program behavior -----------------------------------------------------

TEST_CASE("subset violations warn once per method and do not stop the file") {
    SchemaCatalog catalog = corpus_schema();
    CheckResult result = check_source(R"(
class A {
    void skipped(Connection conn) {
        for (;;) {}
    }
    void checked(Connection conn) {
        Statement stmt = conn.createStatement();
        ResultSet rs = stmt.executeQuery("SELECT label FROM warehouse");
        rs.next();
        int label = rs.getInt("label");
    }
}
)",
                                      Mode::Sound, catalog);
    CHECK(count_code(result, DiagCode::SubsetViolationCode) == 1);
    CHECK(count_code(result, DiagCode::GetterTypeMismatch) == 1);
}

TEST_CASE("degraded errors are a subset of sound errors (mode monotonicity)") {
    SchemaCatalog catalog = corpus_schema();
    std::vector<std::string> files;
    for (const char* dir : {"gallery", "positive", "negative"}) {
        for (const std::string& path : testutil::list_dir(dir)) files.push_back(path);
    }
    REQUIRE(files.size() > 70);
    for (const std::string& path : files) {
        std::vector<SourceFile> sources{{path, read_file(path)}};
        CheckOptions options;
        options.jobs = 1;
        options.mode = Mode::Sound;
        CheckResult sound =
            check_program(sources, catalog, default_conversion_table(), options);
        options.mode = Mode::Degraded;
        CheckResult degraded =
            check_program(sources, catalog, default_conversion_table(), options);

        std::set<std::tuple<std::string, int, int, int>> sound_errors;
        for (const Diagnostic& d : sound.diagnostics) {
            if (d.severity == Severity::Error)
                sound_errors.insert({d.span.file, d.span.line, d.span.column,
                                     static_cast<int>(d.code)});
        }
        for (const Diagnostic& d : degraded.diagnostics) {
            if (d.severity != Severity::Error) continue;
            CHECK_MESSAGE(sound_errors.count({d.span.file, d.span.line, d.span.column,
                                              static_cast<int>(d.code)}) == 1,
                          "degraded-only error in " << path);
        }
    }
}

TEST_CASE("check_program is deterministic across worker counts") {
    SchemaCatalog catalog = corpus_schema();
    std::vector<SourceFile> sources;
    for (const char* dir : {"gallery", "positive", "negative"}) {
        for (const std::string& path : testutil::list_dir(dir))
            sources.push_back({path, read_file(path)});
    }
    CheckOptions one;
    one.jobs = 1;
    CheckOptions many;
    many.jobs = 8;
    CheckResult a = check_program(sources, catalog, default_conversion_table(), one);
    CheckResult b = check_program(sources, catalog, default_conversion_table(), many);
    CHECK(render_diagnostics(a.diagnostics, OutputFormat::Text) ==
          render_diagnostics(b.diagnostics, OutputFormat::Text));
    CHECK(render_diagnostics(a.diagnostics, OutputFormat::Json) ==
          render_diagnostics(b.diagnostics, OutputFormat::Json));
    CHECK(a.stats.checked_getters == b.stats.checked_getters);
    CHECK(a.stats.checked_setters == b.stats.checked_setters);
}
