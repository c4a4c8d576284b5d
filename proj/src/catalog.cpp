#include "zetacf/catalog.hpp"

#include <sstream>

#include "zetacf/error.hpp"

namespace zetacf {

namespace {

const Poly K = Poly::k();

Poly kp(long c) { return K + Poly(c); }

Level lv(Poly b, Poly a) { return {std::move(b), std::move(a)}; }

Head head(long a, long b, long c, long d, TargetConstant t) { return {PolyMobius(a, b, c, d), t}; }

Stage make(std::string name, Provenance prov, std::vector<Level> levels, std::optional<Head> h,
           std::string anchor) {
    Stage s;
    s.name = std::move(name);
    s.provenance = prov;
    s.levels = std::move(levels);
    s.head = std::move(h);
    s.anchor = std::move(anchor);
    return s;
}

}  // namespace

std::vector<Stage> catalog() {
    using T = TargetConstant;
    const Poly apery_b{5, 27, 51, 34};
    const Poly cubic_w{112, 216, 138, 29};
    const Poly quad_w{20, 20, 5};
    std::vector<Stage> out;

    out.push_back(make("APERY", Provenance::Normative, {lv(apery_b, -kp(1).pow(6))},
                       head(0, 12, 1, 0, T::TwoZeta3),
                       "2*zeta(3) = 12/A_0; A_k = 34k^3 + 51k^2 + 27k + 5 - (k+1)^6/A_{k+1}"));

    out.push_back(make("A5", Provenance::Claimed, {lv(Poly{117, 231, 153, 34}, -kp(2).pow(6))},
                       head(6, 0, 5, -1, T::Zeta3),
                       "zeta(3) = 6/(5 - 1^6/A_0); A_k = 34k^3 + 153k^2 + 231k + 117 - (k+2)^6/A_{k+1}"));

    out.push_back(make("A6", Provenance::Claimed,
                       {lv(Poly(5) * kp(1).pow(3) + cubic_w, -kp(2).pow(6))},
                       head(6, 0, 5, -1, T::Zeta3),
                       "A_k = 5(k+1)^3 + 29k^3 + 138k^2 + 216k + 112 - (k+2)^6/A_{k+1}"));

    {
        Stage s = make("W", Provenance::Claimed, {lv(cubic_w, -kp(2).pow(6))}, std::nullopt,
                       "W_k = 29k^3 + 138k^2 + 216k + 112 - (k+2)^6/(W_{k+1} + (5k^2 + 20k + 20)(k+2))");
        s.tail = PolyMobius(1, quad_w * kp(2), 0, 1);
        out.push_back(std::move(s));
    }
    {
        Stage s = make("U", Provenance::Claimed, {lv(cubic_w, -kp(2).pow(5))}, std::nullopt,
                       "U_k = (29k^3 + 138k^2 + 216k + 112)/(6(k+1)) + "
                       "(1/(6(k+1))) * (-(k+2)^5)/((5k^2 + 20k + 20) + 6U_{k+1})");
        s.pre = PolyMobius(1, 0, 0, Poly(6) * kp(1));
        s.tail = PolyMobius(6, quad_w, 0, 1);
        out.push_back(std::move(s));
    }

    out.push_back(make("U4", Provenance::Claimed,
                       {lv(Poly{6, 7, 2} * Poly(2), kp(2).pow(3)), lv(kp(1), kp(1)), lv(4, 1),
                        lv(1, kp(2).pow(2))},
                       std::nullopt,
                       "U_k = (2k+3)(2k+4) + (k+2)^3/((k+1) + (k+1)/(4 + 1/(1 + 1/(U_{k+1}/(k+2)^2))))"));

    {
        Stage s = make("P", Provenance::Claimed,
                       {lv(kp(1) * Poly{6, 7, 2} * Poly(2), kp(2).pow(3)), lv(1, 1), lv(4, 1), lv(1, 1)},
                       std::nullopt,
                       "P_k = (2k+3)(2k+4)/(k+1)^2 + ((k+2)^3/(k+1)^3)/(1 + 1/(4 + 1/(1 + 1/P_{k+1})))");
        s.pre = PolyMobius(1, 0, 0, kp(1).pow(3));
        out.push_back(std::move(s));
    }

    // The printed rational partial denominator (2k+3)(2k+4)/(k+1)^2 is
    // carried by scaling the last level by (k+1)^2.
    out.push_back(make("Q", Provenance::Claimed,
                       {lv(1, 1), lv(4, 1), lv(1, kp(1).pow(2)),
                        lv(Poly{6, 7, 2} * Poly(2), kp(1).pow(2) * kp(2).pow(3))},
                       std::nullopt,
                       "Q_k = 1 + 1/(4 + 1/(1 + 1/((2k+3)(2k+4)/(k+1)^2 + (k+2)^3/Q_{k+1})))"));

    out.push_back(make("Q12", Provenance::Claimed,
                       {lv(1, 1), lv(4, 1), lv(1, 1), lv(kp(1).pow(3), kp(2).pow(3))},
                       head(1, 0, 0, 1, T::Zeta3),
                       "zeta(3) = Q_0; Q_k = 1 + 1/(4 + 1/(1 + 1/((k+1)^3 + (k+2)^3/Q_{k+1})))"));

    {
        Stage s = make("Z", Provenance::Claimed,
                       {lv(1, 1), lv(4, 2), lv(2, Poly(2) * kp(1).pow(3)),
                        lv(Poly(2) * kp(1) * kp(2) * Poly{3, 2}, Poly(2) * kp(2).pow(3))},
                       head(2, 0, 0, 1, T::TwoZeta3),
                       "2*zeta(3) = 2Z_0; Z_k = 1 + 1/(4 + 2/(2 + 2(k+1)^3/(2(k+1)(k+2)(2k+3) + "
                       "2(k+2)^3/(2Z_{k+1}))))");
        s.tail = PolyMobius(2, 0, 0, 1);
        out.push_back(std::move(s));
    }

    // Innermost printed term 2 + 1/(k+1)^3 + (k+2)^3/H_{k+1}, cleared of its
    // denominator by scaling the last level by (k+1)^3.
    out.push_back(make("H", Provenance::Claimed,
                       {lv(2, 1), lv(2, kp(1).pow(3)),
                        lv(Poly(2) * kp(1).pow(3) + Poly(1), kp(1).pow(3) * kp(2).pow(3))},
                       head(1, 0, 0, 1, T::TwoZeta3),
                       "2*zeta(3) = H_0; H_k = 2 + 1/(2 + 1/(2 + 1/(k+1)^3 + (k+2)^3/H_{k+1}))"));

    out.push_back(make("G", Provenance::Claimed,
                       {lv(2, 1), lv(2, 1), lv(kp(1).pow(3), kp(2).pow(3)), lv(2, 1)}, std::nullopt,
                       "G_k = 2 + 1/(2 + 1/((k+1)^3 + (k+2)^3/(2 + 1/G_{k+1})))"));

    out.push_back(make("G16", Provenance::Claimed,
                       {lv(2, kp(2)), lv(Poly{4, 2}, kp(1) * kp(2).pow(2)), lv(kp(1) * Poly{3, 2}, kp(1)),
                        lv(Poly{2, 2}, 1)},
                       std::nullopt,
                       "G_k = 2 + (k+2)/(2k+4 + (k+1)(k+2)^2/((k+1)(2k+3) + (k+1)/(2k+2 + 1/G_{k+1})))"));

    out.push_back(make("G17", Provenance::Claimed,
                       {lv(2, kp(2)), lv(Poly{4, 2}, kp(1) * kp(2).pow(2)), lv(Poly{3, 2}, kp(1)),
                        lv(Poly{2, 2}, 1)},
                       head(2, 1, 1, 0, T::TwoZeta3),
                       "2*zeta(3) = 2 + 1/G_0; G_k = 2 + (k+2)/(2k+4 + (k+1)(k+2)^2/(2k+3 + "
                       "(k+1)/(2k+2 + 1/G_{k+1})))"));

    out.push_back(make("N", Provenance::Normative,
                       {lv(Poly{2, 2}, kp(1) * kp(2)), lv(Poly{4, 2}, kp(1).pow(2)), lv(Poly{3, 2}, kp(2).pow(2)),
                        lv(Poly{2, 2}, kp(1) * kp(2))},
                       head(2, 1, 1, 0, T::TwoZeta3),
                       "2*zeta(3) = 2 + 1/N_0; N_k = 2k+2 + (k+1)(k+2)/(2k+4 + (k+1)^2/(2k+3 + "
                       "(k+2)^2/(2k+2 + (k+1)(k+2)/N_{k+1})))"));

    out.push_back(make("NF", Provenance::Claimed,
                       {lv(Poly{2, 2}, kp(1) * kp(2)), lv(Poly{4, 2}, kp(1) * kp(2).pow(2)),
                        lv(Poly{3, 2}, kp(1) * kp(2)), lv(Poly{2, 2}, 1)},
                       head(2, 1, 1, 0, T::TwoZeta3),
                       "2*zeta(3) = 2 + 1/N_0; N_k = 2k+2 + (k+1)(k+2)/(2k+4 + (k+1)(k+2)^2/(2k+3 + "
                       "(k+1)(k+2)/(2k+2 + 1/N_{k+1})))"));

    for (const auto& s : out) {
        validate(s);
    }
    return out;
}

std::vector<SubstitutionStep> substitution_chain() {
    using S = SubstitutionStep;
    const PolyMobius id;
    std::vector<S> out;
    out.push_back(S{"PEEL", "APERY", "A5", StepKind::HeadPeel, id,
                    "absorb the k=0 step into the head and shift k -> k+1"});
    out.push_back(S{"A6", "A5", "A6", StepKind::Substitution, id, "regroup b as 5(k+1)^3 + remainder"});
    out.push_back(S{"W", "A6", "W", StepKind::Substitution, PolyMobius(1, Poly(5) * kp(1).pow(3), 0, 1),
                    "substitution is written as W_k = T_k - 5(k+1)^3 with T_k undefined; "
                    "read as A_k"});
    out.push_back(S{"U", "W", "U", StepKind::Substitution, PolyMobius(Poly(6) * kp(1), 0, 0, 1),
                    "U_k = W_k/(6(k+1))"});
    out.push_back(S{"U4", "U", "U4", StepKind::Substitution, id, "rewrite as a four-level fraction"});
    out.push_back(S{"P", "U4", "P", StepKind::Substitution, PolyMobius(kp(1).pow(2), 0, 0, 1),
                    "P_k = U_k/(k+1)^2"});
    out.push_back(S{"Q", "P", "Q", StepKind::Substitution, mobius_inverse(PolyMobius(6, 5, 5, 4)),
                    "Q_k = 1 + 1/(4 + 1/(1 + 1/P_k))"});
    out.push_back(S{"Q12", "Q", "Q12", StepKind::Substitution, id, "clear the rational partial denominator"});
    out.push_back(S{"Z", "Q12", "Z", StepKind::Substitution, id, "equivalence rewrite with factors of 2"});
    out.push_back(S{"H", "Z", "H", StepKind::Substitution, PolyMobius(1, 0, 0, 2), "H_k = 2Z_k"});
    out.push_back(S{"G", "H", "G", StepKind::Substitution, PolyMobius(2, 1, 1, 0), "H_k = 2 + 1/G_k"});
    out.push_back(S{"G16", "G", "G16", StepKind::Substitution, id, "regroup into (k+2)/(2k+4 + ...) form"});
    out.push_back(S{"G17", "G16", "G17", StepKind::Substitution, id, "cancel (k+1) in the third level"});
    out.push_back(S{"N", "G17", "N", StepKind::Substitution, PolyMobius(1, 0, 0, kp(1)), "N_k = (k+1)G_k"});
    out.push_back(S{"NF", "N", "NF", StepKind::Substitution, id, "final displayed form of N_k"});
    return out;
}

const Stage& find_stage(const std::vector<Stage>& stages, const std::string& name) {
    for (const auto& s : stages) {
        if (s.name == name) {
            return s;
        }
    }
    throw UnknownStage(name);
}

namespace {

std::string bracket(const Poly& p) { return "[" + p.coeff_list() + "]"; }

std::string matrix_line(const PolyMobius& m) {
    return bracket(m.a()) + " " + bracket(m.b()) + " " + bracket(m.c()) + " " + bracket(m.d());
}

Rational parse_rational(const std::string& tok) {
    const auto slash = tok.find('/');
    if (slash == std::string::npos) {
        return Rational(Integer(tok));
    }
    return Rational(Integer(tok.substr(0, slash)), Integer(tok.substr(slash + 1)));
}

// Reads "[c0 c1 ...]" groups from the stream.
std::vector<Poly> read_brackets(std::istream& in, std::size_t count) {
    std::vector<Poly> out;
    std::string tok;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Rational> coeffs;
        bool open = false;
        while (in >> tok) {
            if (!open) {
                if (tok.front() != '[') throw Error("catalog: expected '[' got " + tok);
                tok.erase(0, 1);
                open = true;
            }
            const bool close = !tok.empty() && tok.back() == ']';
            if (close) tok.pop_back();
            if (!tok.empty()) coeffs.push_back(parse_rational(tok));
            if (close) break;
        }
        if (!open) throw Error("catalog: missing polynomial");
        out.emplace_back(std::move(coeffs));
    }
    return out;
}

PolyMobius read_matrix(std::istream& in) {
    auto e = read_brackets(in, 4);
    return {e[0], e[1], e[2], e[3]};
}

}  // namespace

std::string export_catalog(const std::vector<Stage>& stages) {
    std::ostringstream out;
    for (const auto& s : stages) {
        out << "stage " << s.name << "\n";
        out << "provenance " << to_string(s.provenance) << "\n";
        if (s.head) {
            out << "target " << to_string(s.head->target) << "\n";
            out << "head " << matrix_line(s.head->map) << "\n";
        } else {
            out << "head none\n";
        }
        if (s.pre != PolyMobius()) {
            out << "pre " << matrix_line(s.pre) << "\n";
        }
        for (const auto& level : s.levels) {
            out << "level " << bracket(level.b) << " " << bracket(level.a) << "\n";
        }
        if (s.tail != PolyMobius()) {
            out << "tail " << matrix_line(s.tail) << "\n";
        }
        if (!s.anchor.empty()) {
            out << "anchor " << s.anchor << "\n";
        }
        if (!s.note.empty()) {
            out << "note " << s.note << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

std::vector<Stage> parse_catalog(const std::string& text) {
    std::vector<Stage> out;
    std::istringstream lines(text);
    std::string line;
    std::optional<Stage> cur;
    TargetConstant target = TargetConstant::TwoZeta3;
    bool haveTarget = false;
    while (std::getline(lines, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto sp = line.find(' ');
        const std::string key = line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
        std::istringstream in(rest);
        if (key == "stage") {
            cur = Stage{};
            cur->name = rest;
            haveTarget = false;
            continue;
        }
        if (!cur) throw Error("catalog: '" + key + "' outside a stage record");
        if (key == "provenance") {
            if (rest == "normative") cur->provenance = Provenance::Normative;
            else if (rest == "claimed") cur->provenance = Provenance::Claimed;
            else if (rest == "derived") cur->provenance = Provenance::Derived;
            else throw Error("catalog: bad provenance " + rest);
        } else if (key == "target") {
            target = target_from_string(rest);
            haveTarget = true;
        } else if (key == "head") {
            if (rest != "none") {
                if (!haveTarget) throw Error("catalog: head before target in " + cur->name);
                cur->head = Head{read_matrix(in), target};
            }
        } else if (key == "pre") {
            cur->pre = read_matrix(in);
        } else if (key == "tail") {
            cur->tail = read_matrix(in);
        } else if (key == "level") {
            auto e = read_brackets(in, 2);
            cur->levels.push_back({e[0], e[1]});
        } else if (key == "anchor") {
            cur->anchor = rest;
        } else if (key == "note") {
            cur->note = rest;
        } else if (key == "end") {
            validate(*cur);
            out.push_back(std::move(*cur));
            cur.reset();
        } else {
            throw Error("catalog: unknown key " + key);
        }
    }
    if (cur) throw Error("catalog: unterminated stage " + cur->name);
    return out;
}

}  // namespace zetacf
