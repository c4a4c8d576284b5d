#include "zetacf/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetacf/catalog.hpp"
#include "zetacf/chainverify.hpp"
#include "zetacf/engine.hpp"
#include "zetacf/error.hpp"

namespace zetacf {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Table {
    std::string name;
    std::vector<Json> rows;  // objects sharing one key order
};

struct Envelope {
    explicit Envelope(std::string cmd = "", std::string st = "ok") : command(std::move(cmd)), status(std::move(st)) {}

    std::string command;
    std::string status;
    Json summary = Json::object();
    std::vector<Table> tables;
};

std::string cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render_text(const Envelope& env, std::ostream& out) {
    out << "command: " << env.command << "\n";
    out << "status: " << env.status << "\n";
    for (const auto& [key, value] : env.summary.items()) {
        out << key << ": " << cell(value) << "\n";
    }
    for (const auto& table : env.tables) {
        out << "\n[" << table.name << "]\n";
        if (table.rows.empty()) {
            out << "(none)\n";
            continue;
        }
        std::vector<std::string> keys;
        for (const auto& [key, value] : table.rows.front().items()) keys.push_back(key);
        std::vector<std::size_t> width(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i) {
            width[i] = keys[i].size();
            for (const auto& row : table.rows) width[i] = std::max(width[i], cell(row[keys[i]]).size());
        }
        auto line = [&](auto&& get) {
            std::string s;
            for (std::size_t i = 0; i < keys.size(); ++i) {
                std::string c = get(i);
                if (i + 1 < keys.size()) c.resize(width[i], ' ');
                s += c;
                if (i + 1 < keys.size()) s += "  ";
            }
            out << s << "\n";
        };
        line([&](std::size_t i) { return keys[i]; });
        for (const auto& row : table.rows) line([&](std::size_t i) { return cell(row[keys[i]]); });
    }
}

void render_csv(const Envelope& env, std::ostream& out) {
    bool first = true;
    for (const auto& table : env.tables) {
        if (!first) out << "# table " << table.name << "\n";
        first = false;
        if (table.rows.empty()) continue;
        std::string header;
        for (const auto& [key, value] : table.rows.front().items()) header += (header.empty() ? "" : ",") + key;
        out << header << "\n";
        for (const auto& row : table.rows) {
            std::string line;
            bool lead = true;
            for (const auto& [key, value] : row.items()) {
                line += (lead ? "" : ",") + cell(value);
                lead = false;
            }
            out << line << "\n";
        }
    }
    if (env.tables.empty()) {
        // Summary-only commands: one header line and one row.
        std::string header = "command,status";
        std::string row = env.command + "," + env.status;
        for (const auto& [key, value] : env.summary.items()) {
            header += "," + key;
            row += "," + cell(value);
        }
        out << header << "\n" << row << "\n";
        return;
    }
    out << "# command," << env.command << "\n";
    out << "# status," << env.status << "\n";
    for (const auto& [key, value] : env.summary.items()) out << "# " << key << "," << cell(value) << "\n";
}

void render_json(const Envelope& env, std::ostream& out) {
    Json doc;
    doc["command"] = env.command;
    doc["status"] = env.status;
    doc["summary"] = env.summary;
    for (const auto& table : env.tables) doc[table.name] = table.rows;
    out << doc.dump(2) << "\n";
}

void render(const Envelope& env, Format fmt, std::ostream& out) {
    switch (fmt) {
        case Format::Text:
            render_text(env, out);
            break;
        case Format::Json:
            render_json(env, out);
            break;
        case Format::Csv:
            render_csv(env, out);
            break;
    }
}

// Fixed-point rendering truncated toward zero.
std::string truncated(double v, int places) {
    const double scale = std::pow(10.0, places);
    const double t = std::trunc(v * scale) / scale;
    std::ostringstream s;
    s << std::fixed << std::setprecision(places) << (t == 0.0 ? 0.0 : t);
    return s.str();
}

const Stage& derived_stage(const std::vector<Stage>& derived, const std::string& name) {
    for (const auto& s : derived) {
        if (s.name == name) return s;
    }
    throw UnknownStage(name);
}

struct Options {
    Format format = Format::Text;
    std::size_t digits = 30;
    std::string hook;
    std::string stage;
    std::size_t depth = 6;
    std::size_t nMax = 10;
    std::string window;
    std::size_t refDigits = 120;
    std::size_t vMax = 50;
};

Envelope cmd_eval(const Options& o) {
    const auto derived = derived_chain(catalog(), substitution_chain());
    const Stage& s = derived_stage(derived, o.stage);
    Envelope env("eval");

    Rational value;
    std::string method;
    try {
        const FlatCF f = flatten(s);
        value = convergents(f, o.depth).back().value();
        method = "forward";
    } catch (const StageNotFlattenable&) {
        value = eval_backward(s, o.depth, Rational(1));
        method = "backward";
    }
    const TargetConstant target = s.head->target;
    const ReferenceValue ref = zeta3_reference(o.digits + 10, target);
    const Decimal dec = rat_to_decimal(value, o.digits);

    env.summary["stage"] = s.name;
    env.summary["method"] = method;
    env.summary["depth"] = o.depth;
    env.summary["value"] = value.str();
    env.summary["decimal"] = dec.text;
    env.summary["exact"] = dec.exact;
    env.summary["target"] = to_string(target);
    env.summary["reference"] = rat_to_decimal(ref.value, o.digits).text;
    env.summary["abs_error"] = scientific(value - ref.value);
    return env;
}

Envelope cmd_convergents(const Options& o) {
    const auto derived = derived_chain(catalog(), substitution_chain());
    const FlatCF f = flatten(derived_stage(derived, o.stage));
    Envelope env("convergents");
    env.summary["stage"] = o.stage;
    env.summary["target"] = to_string(f.target);
    Table t{"convergents", {}};
    for (const auto& c : convergents(f, o.nMax)) {
        Json row;
        row["n"] = c.n;
        row["a_n"] = c.n == 0 ? std::string("-") : f.a(c.n).str();
        row["b_n"] = f.b(c.n).str();
        row["p"] = c.p.get_str();
        row["q"] = c.q.get_str();
        row["value"] = c.value().str();
        row["decimal"] = rat_to_decimal(c.value(), o.digits).text;
        t.rows.push_back(std::move(row));
    }
    env.tables.push_back(std::move(t));
    return env;
}

Envelope cmd_verify_chain(const Options& o) {
    auto chain = substitution_chain();
    if (o.hook == "wrong-sigma") {
        for (auto& step : chain) {
            if (step.name == "W") step.sigma = PolyMobius(1, 1, 0, 1);
        }
    }
    const VerifyConfig config;
    const ChainReport report = verify_chain(catalog(), chain, config);

    Envelope env("verify-chain");
    env.status = report.pass() ? "ok" : "fail";
    std::size_t claimed_mismatch = 0;
    Table steps{"steps", {}};
    Table mismatches{"mismatches", {}};
    for (const auto& r : report.steps) {
        if (!r.claimedMatches) ++claimed_mismatch;
        Json row;
        row["step"] = r.stepName;
        row["from"] = r.fromStage;
        row["to"] = r.toStage;
        row["symbolic_pass"] = r.symbolicPass;
        row["claimed_matches"] = r.claimedMatches;
        row["head_matches"] = r.headMatches;
        row["mismatches"] = r.mismatches.size();
        row["residual"] = r.residual ? scientific(*r.residual) : std::string("-");
        row["numeric_pass"] = r.numericPass;
        row["note"] = r.error.empty() ? r.note : r.error;
        steps.rows.push_back(std::move(row));
        for (const auto& m : r.mismatches) {
            Json mm;
            mm["step"] = r.stepName;
            mm["entry"] = m.entry;
            mm["claimed"] = m.claimed;
            mm["derived"] = m.derived;
            mismatches.rows.push_back(std::move(mm));
        }
    }
    env.summary["pass"] = report.pass();
    env.summary["steps"] = report.steps.size();
    env.summary["final_matches_N"] = report.finalMatchesNormative;
    env.summary["final_head_ok"] = report.finalHeadOk;
    env.summary["claimed_mismatches"] = claimed_mismatch;
    env.summary["residual_depth"] = config.residualDepth;
    env.summary["reference_digits"] = config.referenceDigits;
    env.tables.push_back(std::move(steps));
    env.tables.push_back(std::move(mismatches));
    return env;
}

std::pair<std::size_t, std::size_t> parse_window(const std::string& w, std::size_t nMax) {
    if (w.empty()) return {1, nMax};
    const auto colon = w.find(':');
    if (colon == std::string::npos) throw Error("window must be lo:hi, got " + w);
    try {
        return {std::stoul(w.substr(0, colon)), std::stoul(w.substr(colon + 1))};
    } catch (const std::exception&) {
        throw Error("window must be lo:hi, got " + w);
    }
}

Envelope cmd_rate(const Options& o) {
    const auto derived = derived_chain(catalog(), substitution_chain());
    const FlatCF f = flatten(derived_stage(derived, o.stage));
    const auto [lo, hi] = parse_window(o.window, o.nMax);
    const ReferenceValue ref = zeta3_reference(o.refDigits, f.target);
    const ErrorCurve curve = error_curve(f, o.nMax, ref);
    const double slope = digits_per_term(curve, lo, hi);

    Envelope env("rate");
    env.summary["stage"] = o.stage;
    env.summary["n_max"] = o.nMax;
    env.summary["window"] = std::to_string(lo) + ":" + std::to_string(hi);
    env.summary["reference_digits"] = curve.referenceDigits;
    env.summary["slope"] = truncated(slope, 4);
    Table t{"curve", {}};
    for (const auto& p : curve.points) {
        Json row;
        row["n"] = p.n;
        row["digits"] = truncated(p.digits, 6);
        t.rows.push_back(std::move(row));
    }
    env.tables.push_back(std::move(t));
    return env;
}

Envelope cmd_gutnik(const Options& o) {
    const auto stages = catalog();
    FlatCF nes = flatten(find_stage(stages, "N"));
    const FlatCF apery = flatten(find_stage(stages, "APERY"));
    if (o.hook == "perturb") {
        nes.exceptions.push_back({6, std::nullopt, nes.b(6) + Rational(1)});
    }
    Envelope env("gutnik");
    const AlignmentReport rep = gutnik_alignment(nes, apery, o.vMax);
    env.status = rep.allEqual() ? "ok" : "fail";
    env.summary["v_max"] = o.vMax;
    env.summary["delta"] = rep.delta;
    env.summary["delta_prime"] = rep.deltaPrime;
    env.summary["all_equal"] = rep.allEqual();
    Table t{"alignment", {}};
    for (const auto& e : rep.entries) {
        Json row;
        row["v"] = e.v;
        row["nes_index"] = e.nesIndex;
        row["apery_index"] = e.aperyIndex;
        row["equal"] = e.equal;
        row["nes_value"] = e.nesValue.str();
        row["apery_value"] = e.aperyValue.str();
        row["nes_gcd"] = e.nesGcd.get_str();
        t.rows.push_back(std::move(row));
    }
    env.tables.push_back(std::move(t));
    return env;
}

Envelope cmd_catalog(const Options&, Format fmt, std::ostream& out, bool& printed) {
    const auto stages = catalog();
    if (fmt == Format::Text) {
        out << export_catalog(stages);
        printed = true;
        return Envelope();
    }
    Envelope env("catalog");
    env.summary["stages"] = stages.size();
    Table t{"stages", {}};
    for (const auto& s : stages) {
        Json row;
        row["name"] = s.name;
        row["provenance"] = to_string(s.provenance);
        row["target"] = s.head ? to_string(s.head->target) : std::string("-");
        row["depth"] = s.depth();
        row["head"] = s.head ? s.head->map.str() : std::string("-");
        row["step"] = step_matrix(s).str();
        row["anchor"] = s.anchor;
        t.rows.push_back(std::move(row));
    }
    if (fmt == Format::Csv) {
        // Matrix renderings contain commas; csv carries the scalar columns.
        for (auto& row : t.rows) {
            row.erase("head");
            row.erase("step");
            row.erase("anchor");
        }
    }
    env.tables.push_back(std::move(t));
    return env;
}

Envelope cmd_ref(const Options& o) {
    if (o.digits < 1 || o.digits > 1000) {
        throw std::out_of_range("--digits must be in 1..1000");
    }
    const ReferenceValue z = zeta3_reference(o.digits, TargetConstant::Zeta3);
    const ReferenceValue z2 = zeta3_reference(o.digits, TargetConstant::TwoZeta3);
    Envelope env("ref");
    env.summary["digits"] = o.digits;
    env.summary["zeta3"] = z.decimal;
    env.summary["two_zeta3"] = z2.decimal;
    env.summary["oracles"] = "SERIES+DEEP_CF";
    env.summary["agree"] = true;
    return env;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact continued-fraction engine for 2*zeta(3): evaluation, chain verification, "
                 "convergence rates",
                 "zetacf"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--digits", o.digits, "Decimal digits in output");
    app.add_option("--test-hook", o.hook, "Fault injection for tests")->group("");

    auto* eval = app.add_subcommand("eval", "Convergent of a stage at a given depth");
    eval->add_option("stage", o.stage, "Stage name (see `catalog`)")->required();
    eval->add_option("--depth", o.depth, "Flat term index (backward depth for matrix-form stages)");

    auto* conv = app.add_subcommand("convergents", "Convergent table of a flattenable stage");
    conv->add_option("stage", o.stage)->required();
    conv->add_option("--n-max", o.nMax);

    app.add_subcommand("verify-chain", "Verify every substitution step symbolically and numerically");

    auto* rate = app.add_subcommand("rate", "Digits of accuracy per term");
    rate->add_option("stage", o.stage)->required();
    rate->add_option("--n-max", o.nMax);
    rate->add_option("--window", o.window, "lo:hi index window for the slope fit (default 1:n-max)");
    rate->add_option("--ref-digits", o.refDigits, "Reference precision");

    auto* gutnik = app.add_subcommand("gutnik", "Compare Nesterenko convergents 4v-2 with Apery convergents v");
    gutnik->add_option("--v-max", o.vMax);

    app.add_subcommand("catalog", "Export the stage catalog");
    app.add_subcommand("ref", "Reference value of zeta(3) and 2*zeta(3)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    o.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

    const std::string name = app.get_subcommands().front()->get_name();
    Envelope env;
    int code = kExitOk;
    try {
        if (name == "eval") env = cmd_eval(o);
        else if (name == "convergents") env = cmd_convergents(o);
        else if (name == "verify-chain") env = cmd_verify_chain(o);
        else if (name == "rate") env = cmd_rate(o);
        else if (name == "gutnik") env = cmd_gutnik(o);
        else if (name == "ref") env = cmd_ref(o);
        else if (name == "catalog") {
            bool printed = false;
            env = cmd_catalog(o, o.format, out, printed);
            if (printed) return kExitOk;
        }
        if (env.status == "fail") code = kExitCheckFailed;
    } catch (const NoAlignmentFound& e) {
        env = Envelope(name, "fail");
        env.summary["error"] = e.what();
        err << "gutnik: " << e.what() << "\n";
        code = kExitCheckFailed;
    } catch (const std::exception& e) {
        env = Envelope(name, "error");
        env.summary["error"] = e.what();
        err << name << ": " << e.what() << "\n";
        code = kExitError;
    }
    render(env, o.format, out);
    return code;
}

}  // namespace zetacf
