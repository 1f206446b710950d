#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "arakelov/cli.hpp"
#include "arakelov/errors.hpp"
#include "arakelov/record.hpp"

using namespace arakelov;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;

    json j() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("arakelov_cli_" + std::to_string(getpid()) + "_" + name)).string();
}

void write(const std::string& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("exists")
{
    auto r = run({"exists", "--field", "realcyclo:13", "--trace-type"});
    CHECK(r.code == 0);
    CHECK(r.j()["levels"] == json::array({13}));
    CHECK(r.j()["witnesses"][0]["ideal"] == "P13^-1");

    r = run({"exists", "--field", "realcyclo:15", "--trace-type"});
    CHECK(r.code == 3);
    CHECK(r.j()["levels"].empty());

    CHECK(run({"exists", "--field", "quad:+1"}).code == 2);
    CHECK(run({"exists", "--field", "cyclo:12"}).code == 2);
    CHECK(run({"exists", "--field", "realcyclo:x"}).code == 2);
    CHECK(run({"exists"}).code == 2);

    r = run({"exists", "--field", "realcyclo:13", "--level", "13"});
    CHECK(r.code == 0);
    CHECK(r.j()["levels"] == json::array({1, 13}));
    CHECK(r.j()["query"]["admitted"] == true);
    r = run({"exists", "--field", "realcyclo:13", "--trace-type", "--level", "1"});
    CHECK(r.code == 3);
    CHECK(r.j()["query"]["rule"] == "prime power trace type");
    r = run({"exists", "--field", "realcyclo:13", "--level", "169"});
    CHECK(r.code == 3);
    CHECK(r.j()["query"]["rule"] == "level bound");
}

TEST_CASE("construct")
{
    auto r = run({"construct", "--field", "quad:-3", "--level", "3"});
    REQUIRE(r.code == 0);
    json j = r.j();
    CHECK(j["report"]["dimension"] == 2);
    CHECK(j["report"]["even"] == true);
    CHECK(j["report"]["minimum"] == "2");
    CHECK(j["report"]["kissing"] == 6);
    CHECK(j["gram"] == json::array({json::array({"2", "1"}), json::array({"1", "2"})}));
    CHECK(j["verified"] == true);

    r = run({"construct", "--field", "realcyclo:28", "--level", "7", "--trace-type"});
    REQUIRE(r.code == 0);
    j = r.j();
    CHECK(j["report"]["dimension"] == 6);
    CHECK(j["report"]["determinant"] == "343");
    CHECK(j["report"]["level"] == 7);
    CHECK(j["ideal"] == "P7^-1*P2^-1");

    r = run({"construct", "--field", "realcyclo:7", "--level", "7"});
    CHECK(r.code == 3);
    CHECK(r.j()["rule"] == "odd degree level bound");
    r = run({"construct", "--field", "realcyclo:15", "--level", "15", "--trace-type"});
    CHECK(r.code == 3);
    CHECK(r.j()["rule"] == "non prime power trace type");
    CHECK(run({"construct", "--field", "quad:+5", "--level", "3"}).code == 3);
    CHECK(run({"construct", "--field", "quad:+5"}).code == 2);
    CHECK(run({"construct", "--field", "quad:+5", "--level", "5", "--theta", "x"}).code == 2);

    const std::string path = scratch("out.json");
    r = run({"construct", "--field", "realcyclo:13", "--level", "1", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const json from_file = json::parse(in);
    CHECK(from_file["alpha"] != from_file["beta"]);
    CHECK(from_file["report"]["minimum"] == "1");
    std::filesystem::remove(path);
}

TEST_CASE("embedding precision")
{
    auto r = run({"construct", "--field", "quad:+5", "--level", "5", "--embed", "200"});
    REQUIRE(r.code == 0);
    CHECK(r.j()["embedding"]["precision"] == 200);
    CHECK(r.j()["embedding"]["layout"] == "real");

    setenv("ARAKELOV_PRECISION_BITS", "64", 1);
    r = run({"construct", "--field", "quad:-7", "--level", "7", "--embed"});
    REQUIRE(r.code == 0);
    CHECK(r.j()["embedding"]["precision"] == 64);
    CHECK(r.j()["embedding"]["layout"] == "cm");
    unsetenv("ARAKELOV_PRECISION_BITS");
    r = run({"construct", "--field", "quad:-7", "--level", "7", "--embed"});
    CHECK(r.j()["embedding"]["precision"] == 128);

    CHECK(run({"construct", "--field", "quad:-7", "--level", "7", "--embed", "many"}).code == 2);
    CHECK_FALSE(run({"construct", "--field", "quad:-7", "--level", "7"}).j().contains("embedding"));
}

TEST_CASE("records round trip")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"construct", "--field", "quad:+6", "--level", "6", "--theta", "7/2"},
             {"construct", "--field", "quad:-3", "--level", "3", "--embed", "80"},
             {"construct", "--field", "realcyclo:13", "--level", "13"},
             {"construct", "--field", "realcyclo:9", "--level", "1", "--no-min"},
             {"construct", "--field", "realcyclo:24", "--level", "6", "--trace-type", "--theta", "4"},
         }) {
        const auto r = run(args);
        REQUIRE(r.code == 0);
        const LatticeRecord rec = parse_record(r.out);
        CHECK(emit_record(rec) == r.out);
        CHECK(emit_record(parse_record(emit_record(rec))) == r.out);

        const std::string path = scratch("rt.json");
        write(path, r.out);
        const auto v = run({"verify", "--in", path, "--min", "--theta", "4"});
        CHECK(v.code == 0);
        CHECK(v.j()["verified"] == true);
        CHECK(v.j()["mismatches"].empty());
        std::filesystem::remove(path);
    }

    CHECK_THROWS_AS(parse_record("{"), SpecError);
    CHECK_THROWS_AS(parse_record("[]"), SpecError);
    const std::string good = run({"construct", "--field", "quad:+2", "--level", "2"}).out;
    json j = json::parse(good);
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_record(j.dump()), SpecError);
    j = json::parse(good);
    j["alpha"][0] = 1;
    CHECK_THROWS_AS(parse_record(j.dump()), SpecError);
    j = json::parse(good);
    j["gram"][0][0] = "1.5";
    CHECK_THROWS_AS(parse_record(j.dump()), SpecError);
    j = json::parse(good);
    j["alpha"][0] = "2/0";
    CHECK_THROWS_AS(parse_record(j.dump()), SpecError);
    j = json::parse(good);
    j.erase("beta");
    CHECK_THROWS_AS(parse_record(j.dump()), SpecError);
}

TEST_CASE("verify flags tampering")
{
    const std::string text = run({"construct", "--field", "realcyclo:36", "--level", "3", "--trace-type"}).out;
    const std::string path = scratch("tamper.json");

    json j = json::parse(text);
    j["gram"][0][0] = "4";
    write(path, j.dump());
    auto v = run({"verify", "--in", path});
    CHECK(v.code == 4);
    CHECK(v.j()["mismatches"] == json::array({"gram"}));

    j = json::parse(text);
    j["report"]["determinant"] = "9";
    write(path, j.dump());
    v = run({"verify", "--in", path});
    CHECK(v.code == 4);
    CHECK(v.j()["mismatches"] == json::array({"determinant"}));

    j = json::parse(text);
    j["report"]["kissing"] = 1;
    write(path, j.dump());
    CHECK(run({"verify", "--in", path}).code == 0);   // minimum not recomputed
    CHECK(run({"verify", "--in", path, "--min"}).code == 4);

    j = json::parse(text);
    j["beta"][1] = "7";
    write(path, j.dump());
    v = run({"verify", "--in", path});
    CHECK(v.code == 4);
    CHECK(v.j()["clause"] == "(i)");

    j = json::parse(text);
    j["ideal"] = "P3^-2*P2^-1";
    write(path, j.dump());
    v = run({"verify", "--in", path});
    CHECK(v.code == 4);
    CHECK(v.j()["clause"] == "(ii)");

    j = json::parse(text);
    j["alpha"][0] = "-1";
    write(path, j.dump());
    CHECK(run({"verify", "--in", path}).code == 4);

    j = json::parse(text);
    j["alpha"].erase(0);
    write(path, j.dump());
    CHECK(run({"verify", "--in", path}).code == 2);

    write(path, "not json");
    CHECK(run({"verify", "--in", path}).code == 2);
    std::filesystem::remove(path);
    CHECK(run({"verify", "--in", path}).code == 2);
}

TEST_CASE("theta prefix through verify")
{
    const std::string path = scratch("theta.json");
    write(path, run({"construct", "--field", "realcyclo:36", "--level", "3", "--trace-type"}).out);
    const auto v = run({"verify", "--in", path, "--theta", "8"});
    REQUIRE(v.code == 0);
    const json theta = v.j()["report"]["theta"];
    CHECK(theta[0] == json{{"count", 1}, {"norm", "0"}});
    CHECK(theta[1]["norm"] == "2");
    CHECK(theta[1]["count"].get<long>() > 0);
    std::filesystem::remove(path);
}

TEST_CASE("catalog")
{
    for (const char* which : {"--paper-table", "--examples"}) {
        const auto r = run({"catalog", which});
        const json rows = r.j();
        REQUIRE(rows.is_array());
        bool all = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i]["row"] == i);
            all = all && rows[i]["pass"].get<bool>();
            if (!rows[i]["pass"].get<bool>())
                CHECK(r.err.find(rows[i]["name"].get<std::string>()) != std::string::npos);
        }
        CHECK((r.code == 0) == all);
        CHECK(run({"catalog", which}).out == r.out);
    }
    CHECK(run({"catalog"}).code == 2);
    CHECK(run({"catalog", "--paper-table", "--examples"}).code == 2);
}
