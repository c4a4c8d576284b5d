#include <doctest.h>

#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zetacf/cli.hpp"

using namespace zetacf;
using nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string scalar(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

using Table = std::vector<std::map<std::string, std::string>>;

struct Parsed {
    std::map<std::string, std::string> summary;
    Table table;
};

Parsed from_json(const std::string& text) {
    const auto doc = ordered_json::parse(text);
    Parsed p;
    p.summary["command"] = doc["command"];
    p.summary["status"] = doc["status"];
    for (const auto& [k, v] : doc["summary"].items()) p.summary[k] = scalar(v);
    for (const auto& [k, v] : doc.items()) {
        if (!v.is_array()) continue;
        for (const auto& row : v) {
            std::map<std::string, std::string> r;
            for (const auto& [ck, cv] : row.items()) r[ck] = scalar(cv);
            p.table.push_back(r);
        }
    }
    return p;
}

Parsed from_text(const std::string& text) {
    Parsed p;
    const auto ls = lines(text);
    std::size_t i = 0;
    for (; i < ls.size() && !ls[i].empty(); ++i) {
        const auto pos = ls[i].find(": ");
        p.summary[ls[i].substr(0, pos)] = ls[i].substr(pos + 2);
    }
    i += 2;  // blank line and section title
    if (i < ls.size()) {
        const auto header = words(ls[i]);
        for (++i; i < ls.size() && !ls[i].empty(); ++i) {
            const auto cells = words(ls[i]);
            std::map<std::string, std::string> r;
            for (std::size_t c = 0; c < header.size(); ++c) r[header[c]] = cells.at(c);
            p.table.push_back(r);
        }
    }
    return p;
}

Parsed from_csv(const std::string& text) {
    Parsed p;
    std::vector<std::string> data;
    for (const auto& l : lines(text)) {
        if (l.rfind("# ", 0) == 0) {
            const auto cells = split(l.substr(2), ',');
            p.summary[cells[0]] = cells[1];
        } else {
            data.push_back(l);
        }
    }
    const auto header = split(data.at(0), ',');
    Table rows;
    for (std::size_t i = 1; i < data.size(); ++i) {
        const auto cells = split(data[i], ',');
        std::map<std::string, std::string> r;
        for (std::size_t c = 0; c < header.size(); ++c) r[header[c]] = cells.at(c);
        rows.push_back(r);
    }
    if (p.summary.empty()) {
        p.summary = rows.at(0);
    } else {
        p.table = rows;
    }
    return p;
}

std::map<std::string, std::string> summary_of(const std::vector<std::string>& args) {
    auto a = args;
    a.push_back("--format");
    a.push_back("json");
    return from_json(run(a).out).summary;
}

}  // namespace

TEST_CASE("eval") {
    auto s = summary_of({"eval", "N", "--depth", "6", "--digits", "10"});
    CHECK(s["value"] == "351/146");
    CHECK(s["decimal"] == "2.4041095890");
    CHECK(s["target"] == "TWO_ZETA3");
    s = summary_of({"eval", "APERY", "--depth", "1", "--digits", "10"});
    CHECK(s["value"] == "12/5");
    CHECK(s["decimal"] == "2.4000000000");

    const Run bad = run({"eval", "BOGUS"});
    CHECK(bad.code == kExitError);
    CHECK(bad.out.find("status: error") != std::string::npos);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("eval of a matrix-form derived stage") {
    const Run r = run({"eval", "Z", "--depth", "25", "--format", "json"});
    CHECK(r.code == kExitOk);
    const auto doc = ordered_json::parse(r.out);
    CHECK(doc["summary"]["target"] == "TWO_ZETA3");
}

TEST_CASE("verify-chain") {
    const Run r = run({"verify-chain"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("pass: true") != std::string::npos);

    const Run hooked = run({"--test-hook", "wrong-sigma", "verify-chain"});
    CHECK(hooked.code == kExitCheckFailed);
    CHECK(hooked.out.find("status: fail") != std::string::npos);
}

TEST_CASE("verify-chain json has one record per step in a fixed key order") {
    const Run r = run({"verify-chain", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto doc = ordered_json::parse(r.out);
    std::vector<std::string> top;
    for (const auto& [k, v] : doc.items()) top.push_back(k);
    CHECK(top == std::vector<std::string>{"command", "status", "summary", "steps", "mismatches"});
    std::set<std::string> flagged;
    for (const auto& step : doc["steps"]) {
        if (step["claimed_matches"] == false) flagged.insert(step["step"].get<std::string>());
    }
    CHECK(flagged.size() == doc["summary"]["claimed_mismatches"].get<std::size_t>());
    for (const auto& m : doc["mismatches"]) CHECK(flagged.count(m["step"].get<std::string>()) == 1);
    REQUIRE(doc["steps"].size() == 15);
    const std::vector<std::string> keys = {"step",     "from",     "to",           "symbolic_pass", "claimed_matches",
                                           "head_matches", "mismatches", "residual", "numeric_pass", "note"};
    for (const auto& step : doc["steps"]) {
        std::vector<std::string> got;
        for (const auto& [k, v] : step.items()) got.push_back(k);
        CHECK(got == keys);
        CHECK(step["symbolic_pass"] == true);
    }
    CHECK(run({"verify-chain", "--format", "json"}).out == r.out);
}

TEST_CASE("rate") {
    auto s = summary_of({"rate", "APERY", "--n-max", "25", "--window", "5:25"});
    CHECK(std::stod(s["slope"]) == doctest::Approx(3.06).epsilon(0.01));
    s = summary_of({"rate", "N", "--n-max", "100", "--window", "20:100"});
    CHECK(std::stod(s["slope"]) == doctest::Approx(0.77).epsilon(0.01));

    CHECK(run({"rate", "N", "--n-max", "1"}).code == kExitError);
    CHECK(run({"rate", "Z", "--n-max", "10"}).code == kExitError);
    CHECK(run({"rate", "N", "--n-max", "10", "--window", "oops"}).code == kExitError);
}

TEST_CASE("gutnik") {
    const Run r = run({"gutnik", "--v-max", "50", "--format", "json"});
    CHECK(r.code == kExitOk);
    const auto doc = ordered_json::parse(r.out);
    CHECK(doc["alignment"].size() == 50);
    for (const auto& row : doc["alignment"]) CHECK(row["equal"] == true);

    const Run csv = run({"gutnik", "--v-max", "2", "--format", "csv"});
    std::vector<std::string> data;
    for (const auto& l : lines(csv.out)) {
        if (l.rfind("#", 0) != 0) data.push_back(l);
    }
    CHECK(data.size() == 3);

    const Run bad = run({"--test-hook", "perturb", "gutnik", "--v-max", "5"});
    CHECK(bad.code == kExitCheckFailed);
    CHECK(bad.out.find("status: fail") != std::string::npos);
}

TEST_CASE("ref") {
    auto s = summary_of({"ref", "--digits", "7"});
    CHECK(s["zeta3"] == "1.2020569");
    CHECK(s["two_zeta3"] == "2.4041138");
    CHECK(run({"ref", "--digits", "0"}).code == kExitError);
    CHECK(run({"ref", "--digits", "1001"}).code == kExitError);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == kExitError);
    CHECK(run({"frobnicate"}).code == kExitError);
    CHECK(run({"--format", "xml", "ref"}).code == kExitError);
}

TEST_CASE("formats carry identical content") {
    const std::vector<std::vector<std::string>> invocations = {
        {"eval", "N", "--depth", "6", "--digits", "10"},
        {"eval", "APERY", "--depth", "3"},
        {"ref", "--digits", "25"},
        {"rate", "APERY", "--n-max", "12", "--window", "3:12"},
        {"gutnik", "--v-max", "4"},
        {"convergents", "N", "--n-max", "8", "--digits", "12"},
    };
    for (const auto& args : invocations) {
        CAPTURE(args[0]);
        auto with = [&](const std::string& f) {
            auto a = args;
            a.push_back("--format");
            a.push_back(f);
            return run(a).out;
        };
        const Parsed j = from_json(with("json"));
        const Parsed t = from_text(with("text"));
        const Parsed c = from_csv(with("csv"));
        CHECK(j.summary == t.summary);
        CHECK(j.summary == c.summary);
        CHECK(j.table == t.table);
        CHECK(j.table == c.table);
    }
}

TEST_CASE("decimals are truncated") {
    auto s = summary_of({"eval", "N", "--depth", "2", "--digits", "3"});
    CHECK(s["decimal"] == "2.400");
    auto r = summary_of({"ref", "--digits", "3"});
    CHECK(r["zeta3"] == "1.202");
    CHECK(r["two_zeta3"] == "2.404");
}

TEST_CASE("catalog") {
    const Run text = run({"catalog"});
    CHECK(text.code == kExitOk);
    for (const char* name : {"APERY", "A5", "A6", "W", "U", "U4", "P", "Q", "Q12", "Z", "H", "G", "G16", "G17", "N"}) {
        CHECK(text.out.find(std::string("stage ") + name + "\n") != std::string::npos);
    }
    const Run csv = run({"catalog", "--format", "csv"});
    const Parsed c = from_csv(csv.out);
    const Parsed j = from_json(run({"catalog", "--format", "json"}).out);
    CHECK(c.table.size() == 16);
    CHECK(c.summary.at("stages") == "16");
    REQUIRE(j.table.size() == 16);
    CHECK(j.table[0].at("name") == "APERY");
}

TEST_CASE("help hides the test hooks") {
    const Run r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verify-chain") != std::string::npos);
    CHECK(r.out.find("test-hook") == std::string::npos);
}
