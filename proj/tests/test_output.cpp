#include <sstream>

#include "doctest.h"
#include "gcslab/output.hpp"

using namespace gcslab::out;

TEST_SUITE_BEGIN("output");

TEST_CASE("double formatting is stable and respects digits") {
    CHECK(format_double(1.0, 12) == "1");
    CHECK(format_double(0.5641895835477563, 6) == "0.56419");
    CHECK(format_double(0.5641895835477563, 12) == "0.564189583548");
    CHECK(format_double(1e-300, 17) == format_double(1e-300, 17));
    CHECK(format_double(-0.0, 12) == "-0");
}

TEST_CASE("csv quoting follows RFC 4180") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_quote("line\nbreak") == "\"line\nbreak\"");

    std::ostringstream os;
    const std::vector<std::string> row = {"a", "b,c", "d"};
    write_csv_row(os, row);
    CHECK(os.str() == "a,\"b,c\",d\n");
}

TEST_CASE("json writer emits deterministic structures") {
    const JsonWriter jw(17);
    CHECK(jw.string("a\"b\\c\n") == "\"a\\\"b\\\\c\\n\"");
    CHECK(jw.boolean(true) == "true");

    const std::vector<std::pair<std::string, std::string>> members = {
        {"name", jw.string("x")},
        {"value", jw.number(0.25)},
    };
    CHECK(jw.object(members) == "{\"name\":\"x\",\"value\":0.25}");

    const std::vector<std::string> elems = {jw.number(1.0), jw.number(2.0)};
    CHECK(jw.array(elems) == "[1,2]");
}

TEST_SUITE_END();
