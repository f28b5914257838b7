// Command line front end: validates tope files, counts committees by the
// enumeration oracle or any closed formula, cross-checks the two, counts
// relative blocking sets in Boolean and crosspolytope lattices, generates
// random realizable instances, and reports convexity structure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topecom/boolean_blocking.hpp"
#include "topecom/committee_formulas.hpp"
#include "topecom/committee_oracle.hpp"
#include "topecom/convexity.hpp"
#include "topecom/cross_blocking.hpp"
#include "topecom/errors.hpp"
#include "topecom/instances.hpp"
#include "topecom/oriented_matroid.hpp"
#include "topecom/rational.hpp"

using nlohmann::json;
using namespace topecom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitUsage = 2;

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
    auto dots = text.find("..");
    Range r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw Error("range must look like A..B or a single integer: " + text);
    }
    if (r.lo > r.hi) throw Error("empty range: " + text);
    return r;
}

std::optional<EllChoice> parse_ell_option(const std::string& text) {
    if (text.empty()) return std::nullopt;
    if (text == "small") return EllChoice::small();
    if (text == "large") return EllChoice::large();
    throw Error("--ell accepts small or large");
}

// One antichain member per line as comma separated integers; blank lines and
// # comments are skipped. Positive i means point i (bit i-1); negative -i is
// only meaningful for the crosspolytope and maps to bit m+i-1.
std::vector<std::vector<int>> load_antichain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open antichain file: " + path);
    std::vector<std::vector<int>> members;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::vector<int> member;
        std::string item;
        std::istringstream ls(line);
        while (std::getline(ls, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t\r"));
            item.erase(item.find_last_not_of(" \t\r") + 1);
            if (item.empty()) continue;
            try {
                member.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw Error("bad antichain entry '" + item + "' on line " +
                            std::to_string(lineno));
            }
        }
        if (!member.empty()) members.push_back(std::move(member));
    }
    return members;
}

Mask boolean_member_mask(const std::vector<int>& points, int n) {
    Mask m = 0;
    for (int p : points) {
        if (p < 1 || p > n)
            throw Error("antichain point " + std::to_string(p) + " outside 1.." +
                        std::to_string(n));
        m |= bit(p - 1);
    }
    return m;
}

Mask cross_member_mask(const std::vector<int>& points, int m_axes) {
    Mask m = 0;
    for (int p : points) {
        int a = p > 0 ? p : -p;
        if (a < 1 || a > m_axes)
            throw Error("crosspolytope point " + std::to_string(p) + " outside +-1..+-" +
                        std::to_string(m_axes));
        m |= bit(p > 0 ? a - 1 : m_axes + a - 1);
    }
    return m;
}

OrientedMatroid load_or_exit(const std::string& path) {
    return load_topes_file(path, true);
}

json report_json(const CrosscheckReport& rep) {
    json j;
    j["instance"] = {{"t", rep.t}, {"num_topes", rep.num_topes}};
    json cells = json::array();
    int disagreements = 0, errors = 0;
    for (const auto& c : rep.cells) {
        json e = {{"k", c.k}, {"method", c.method}, {"elapsed_ms", c.elapsed_ms}};
        if (c.ok) {
            e["value"] = c.value.str();
            if (c.agrees) {
                e["agrees"] = *c.agrees;
                if (!*c.agrees) ++disagreements;
            }
        } else {
            e["error"] = c.error;
            ++errors;
        }
        cells.push_back(std::move(e));
    }
    j["results"] = std::move(cells);
    j["totals"] = {{"cells", rep.cells.size()},
                   {"errors", errors},
                   {"disagreements", disagreements},
                   {"all_agree", rep.all_agree}};
    return j;
}

void print_crosscheck_tsv(const CrosscheckReport& rep, std::ostream& os) {
    os << "k\tmethod\tvalue\tagrees\telapsed_ms\n";
    for (const auto& c : rep.cells) {
        os << c.k << '\t' << c.method << '\t';
        if (c.ok)
            os << c.value.str();
        else
            os << "error: " << c.error;
        os << '\t';
        if (c.ok && c.agrees)
            os << (*c.agrees ? "yes" : "NO");
        else
            os << "-";
        os << '\t' << static_cast<std::int64_t>(c.elapsed_ms) << '\n';
    }
}

int cmd_validate(const std::string& file) {
    try {
        auto om = load_topes_file(file, false);
        auto rep = validate(om);
        if (!rep.ok()) {
            std::cerr << rep.summary() << '\n';
            return kExitUsage;
        }
        std::cout << "valid: t=" << om.ground_size() << " topes=" << om.num_topes()
                  << '\n';
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

struct KappaArgs {
    std::string file;
    std::string k_text;
    std::string method = "brute";
    std::string ell_text;
    std::string out = "tsv";
    bool free_only = false;
    bool minimal = false;
    bool maxplus = false;
    int threads = 0;
};

int run_formula_kappa(const OrientedMatroid& om, const KappaArgs& a, Range range) {
    auto ell = parse_ell_option(a.ell_text);
    CrosscheckReport rep;
    rep.t = om.ground_size();
    rep.num_topes = om.num_topes();
    rep.k_lo = range.lo;
    rep.k_hi = range.hi;
    for (int k = range.lo; k <= range.hi; ++k) {
        CrosscheckCell cell;
        cell.k = k;
        cell.method = a.method;
        auto t0 = std::chrono::steady_clock::now();
        try {
            if (a.free_only) {
                std::string name =
                    a.method.rfind("free-", 0) == 0 ? a.method : "free-" + a.method;
                auto fm = parse_free_method(name);
                if (!fm) throw Error("method has no opposite-free form: " + a.method);
                cell.method = name;
                cell.value = count_free_committees(om, k, *fm, {}, a.threads);
            } else {
                auto cm = parse_method(a.method);
                if (!cm) throw Error("unknown method: " + a.method);
                cell.value = count_committees(om, k, *cm, ell, {}, a.threads);
            }
            cell.ok = true;
        } catch (const Error& e) {
            cell.error = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        cell.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rep.cells.push_back(std::move(cell));
    }
    if (a.out == "json") {
        std::cout << report_json(rep).dump(2) << '\n';
    } else {
        print_crosscheck_tsv(rep, std::cout);
        Count total = 0;
        bool complete = true;
        for (const auto& c : rep.cells) {
            if (c.ok)
                total += c.value;
            else
                complete = false;
        }
        if (complete) std::cout << "total\t" << total.str() << '\n';
    }
    return kExitOk;
}

int cmd_kappa(const KappaArgs& a) {
    try {
        auto om = load_or_exit(a.file);
        const int N = om.num_topes();
        if (a.method == "all") {
            Range range = a.k_text.empty() ? Range{3, N - 3} : parse_range(a.k_text);
            std::vector<std::string> methods =
                a.free_only ? all_free_method_names() : all_method_names();
            auto rep = crosscheck(om, KRange{range.lo, range.hi}, methods,
                                  parse_ell_option(a.ell_text), {}, a.threads);
            if (a.out == "json")
                std::cout << report_json(rep).dump(2) << '\n';
            else
                print_crosscheck_tsv(rep, std::cout);
            return rep.all_agree ? kExitOk : kExitDisagree;
        }
        if (a.method == "brute") {
            Range range = a.k_text.empty() ? Range{1, N} : parse_range(a.k_text);
            if (range.lo < 1 || range.hi > N) throw Error("k range outside 1..N");
            KappaVariants vars;
            vars.free = a.free_only;
            vars.minimal = a.minimal;
            vars.maxplus = a.maxplus;
            auto rep = kappa_sweep(om, KRange{range.lo, range.hi}, vars, {}, a.threads);
            if (a.out == "json") {
                std::cout << to_json(rep) << '\n';
            } else {
                std::cout << to_tsv(rep);
                std::cout << "total\t" << rep.total(rep.kappa) << '\n';
                if (rep.kappa_free)
                    std::cout << "total_free\t" << rep.total(*rep.kappa_free) << '\n';
            }
            return kExitOk;
        }
        if (a.minimal || a.maxplus)
            throw Error("--min and --maxplus need --method brute");
        Range range = a.k_text.empty()
                          ? (a.free_only ? Range{3, N / 2} : Range{3, N - 3})
                          : parse_range(a.k_text);
        return run_formula_kappa(om, a, range);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_crosscheck(const std::string& file, const std::string& k_text,
                   const std::string& methods_text, const std::string& ell_text,
                   const std::string& out, int threads) {
    try {
        auto om = load_or_exit(file);
        Range range = parse_range(k_text);
        std::vector<std::string> methods;
        if (!methods_text.empty()) {
            std::istringstream ms(methods_text);
            std::string name;
            while (std::getline(ms, name, ','))
                if (!name.empty()) methods.push_back(name);
        }
        auto rep = crosscheck(om, KRange{range.lo, range.hi}, methods,
                              parse_ell_option(ell_text), {}, threads);
        if (out == "json")
            std::cout << report_json(rep).dump(2) << '\n';
        else
            print_crosscheck_tsv(rep, std::cout);
        return rep.all_agree ? kExitOk : kExitDisagree;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_gen(int t, int d, std::uint64_t seed, const std::string& out, int threads) {
    try {
        auto om = random_realizable(t, d, seed, threads);
        std::ofstream os(out);
        if (!os) throw Error("cannot write " + out);
        os << serialize(om);
        std::cout << "generated: t=" << om.ground_size() << " topes=" << om.num_topes()
                  << " -> " << out << '\n';
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

struct BoolArgs {
    int n = 0, k = 0;
    std::string r_text, method = "all", antichain_file;
    std::vector<std::string> random_args;
};

int cmd_bool_block(const BoolArgs& a) {
    try {
        Ratio r = parse_ratio(a.r_text);
        std::vector<Mask> members;
        if (!a.antichain_file.empty()) {
            for (const auto& pts : load_antichain_file(a.antichain_file))
                members.push_back(boolean_member_mask(pts, a.n));
        } else if (a.random_args.size() == 3) {
            members = random_antichain(a.n, std::stoi(a.random_args[0]),
                                       std::stoi(a.random_args[1]),
                                       std::stoull(a.random_args[2]));
        } else {
            throw Error("give --antichain FILE or --random COUNT SIZE SEED");
        }
        auto inst = BlockingInstance::make(a.n, members, r, a.k);

        struct Row {
            std::string name;
            std::function<Count()> run;
        };
        std::vector<Row> rows = {
            {"brute", [&] { return brute_blockers(inst); }},
            {"complement-ideal",
             [&] { return count_blockers_ie(inst, IeMethod::ComplementIdeal); }},
            {"ideal", [&] { return count_blockers_ie(inst, IeMethod::Ideal); }},
            {"vandermonde", [&] { return count_blockers_ie(inst, IeMethod::Vandermonde); }},
            {"double-ie", [&] { return count_blockers_ie(inst, IeMethod::DoubleIE); }},
            {"complement-ideal-mobius",
             [&] { return count_blockers_mobius(inst, MobiusMethod::ComplementIdeal); }},
            {"ideal-mobius",
             [&] { return count_blockers_mobius(inst, MobiusMethod::Ideal); }},
            {"vandermonde-mobius",
             [&] { return count_blockers_mobius(inst, MobiusMethod::Vandermonde); }},
            {"double-mobius",
             [&] { return count_blockers_mobius(inst, MobiusMethod::DoubleMobius); }},
            {"nerve", [&] { return count_blockers_nerve(inst); }},
        };
        bool all = a.method == "all";
        std::optional<Count> reference;
        bool disagree = false;
        bool found = false;
        std::cout << "method\tvalue\n";
        for (const auto& row : rows) {
            if (!all && row.name != a.method) continue;
            found = true;
            try {
                Count v = row.run();
                std::cout << row.name << '\t' << v.str() << '\n';
                if (all) {
                    if (!reference)
                        reference = v;
                    else if (*reference != v)
                        disagree = true;
                }
            } catch (const ConstraintViolation& e) {
                std::cout << row.name << "\tskipped: " << e.what() << '\n';
            }
        }
        if (!found) throw Error("unknown method: " + a.method);
        if (disagree) {
            std::cerr << "methods disagree\n";
            return kExitDisagree;
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_cross_block(int m, const std::string& r_text, int k,
                    const std::string& antichain_file, const std::string& method) {
    try {
        Ratio r = parse_ratio(r_text);
        std::vector<Mask> members;
        for (const auto& pts : load_antichain_file(antichain_file))
            members.push_back(cross_member_mask(pts, m));
        auto inst = CrossInstance::make(m, members, r, k);
        struct Row {
            std::string name;
            std::function<Count()> run;
        };
        std::vector<Row> rows = {
            {"brute", [&] { return brute_blockers_cross(inst); }},
            {"double-ie",
             [&] { return count_blockers_cross(inst, CrossMethod::DoubleIE); }},
            {"double-mobius",
             [&] { return count_blockers_cross(inst, CrossMethod::DoubleMobius); }},
        };
        bool all = method == "all";
        std::optional<Count> reference;
        bool disagree = false, found = false;
        std::cout << "method\tvalue\n";
        for (const auto& row : rows) {
            if (!all && row.name != method) continue;
            found = true;
            try {
                Count v = row.run();
                std::cout << row.name << '\t' << v.str() << '\n';
                if (all) {
                    if (!reference)
                        reference = v;
                    else if (*reference != v)
                        disagree = true;
                }
            } catch (const ConstraintViolation& e) {
                std::cout << row.name << "\tskipped: " << e.what() << '\n';
            }
        }
        if (!found) throw Error("unknown method: " + method);
        if (disagree) {
            std::cerr << "methods disagree\n";
            return kExitDisagree;
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_convex(const std::string& file, int layer) {
    try {
        auto om = load_or_exit(file);
        if (layer >= 0) {
            auto direct = ideal_layer_count(om, layer, LayerMethod::Direct);
            auto viafree = ideal_layer_count(om, layer, LayerMethod::FreeSets);
            std::cout << "layer\t" << layer << "\ndirect\t" << direct << "\nfree-sets\t"
                      << viafree << '\n';
            return direct == viafree ? kExitOk : kExitDisagree;
        }
        auto rep = convexity_report(om);
        std::vector<int> convex_by_size(om.ground_size() + 1, 0);
        std::vector<int> free_by_size(om.ground_size() + 1, 0);
        for (Mask m : rep.convex) ++convex_by_size[static_cast<std::size_t>(popcount(m))];
        for (Mask m : rep.free) ++free_by_size[static_cast<std::size_t>(popcount(m))];
        std::cout << "size\tconvex\tfree\n";
        for (int s = 0; s <= om.ground_size(); ++s)
            std::cout << s << '\t' << convex_by_size[static_cast<std::size_t>(s)] << '\t'
                      << free_by_size[static_cast<std::size_t>(s)] << '\n';
        std::cout << "total\t" << rep.convex.size() << '\t' << rep.free.size() << '\n';
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tope committee counting toolkit"};
    app.require_subcommand(1);

    std::string file, k_text, methods_text, ell_text, out = "tsv";
    int threads = 0;

    auto* validate_cmd = app.add_subcommand("validate", "check a tope file");
    validate_cmd->add_option("file", file, "tope file")->required();

    KappaArgs ka;
    auto* kappa_cmd = app.add_subcommand("kappa", "count committees");
    kappa_cmd->add_option("file", ka.file, "tope file")->required();
    kappa_cmd->add_option("--k", ka.k_text, "cardinality range A..B");
    kappa_cmd->add_flag("--free", ka.free_only, "opposite-free committees");
    kappa_cmd->add_flag("--min", ka.minimal, "also count minimal committees (brute)");
    kappa_cmd->add_flag("--maxplus", ka.maxplus,
                        "also count committees of maximal positive parts (brute)");
    kappa_cmd->add_option("--method", ka.method,
                          "brute|hs-ie|vandermonde|mobius-union|mobius-vandermonde|"
                          "double-mobius|convex-euler|unique-facet|all");
    kappa_cmd->add_option("--ell", ka.ell_text, "small|large subset side");
    kappa_cmd->add_option("--out", ka.out, "tsv|json");
    kappa_cmd->add_option("--threads", ka.threads, "worker threads (0 = auto)");

    auto* cross_cmd = app.add_subcommand("crosscheck", "all methods against the oracle");
    cross_cmd->add_option("file", file, "tope file")->required();
    cross_cmd->add_option("--k", k_text, "cardinality range A..B")->required();
    cross_cmd->add_option("--methods", methods_text, "comma separated method names");
    cross_cmd->add_option("--ell", ell_text, "small|large subset side");
    cross_cmd->add_option("--out", out, "tsv|json");
    cross_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    int gen_t = 0, gen_d = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random realizable instance");
    gen_cmd->add_option("--t", gen_t, "number of ground elements")->required();
    gen_cmd->add_option("--dim", gen_d, "realization dimension")->required();
    gen_cmd->add_option("--seed", gen_seed, "random seed")->required();
    gen_cmd->add_option("--out", gen_out, "output tope file")->required();
    gen_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    BoolArgs ba;
    auto* bool_cmd = app.add_subcommand("bool-block", "count Boolean blocking k-sets");
    bool_cmd->add_option("--n", ba.n, "ground size")->required();
    bool_cmd->add_option("--r", ba.r_text, "threshold ratio P/Q")->required();
    bool_cmd->add_option("--k", ba.k, "subset size")->required();
    bool_cmd->add_option("--antichain", ba.antichain_file, "antichain file");
    bool_cmd->add_option("--random", ba.random_args, "COUNT SIZE SEED")->expected(3);
    bool_cmd->add_option("--method", ba.method,
                         "brute|complement-ideal|ideal|vandermonde|double-ie|"
                         "complement-ideal-mobius|ideal-mobius|vandermonde-mobius|"
                         "double-mobius|nerve|all");

    int cb_m = 0, cb_k = 0;
    std::string cb_r, cb_file, cb_method = "all";
    auto* crossb_cmd =
        app.add_subcommand("cross-block", "count crosspolytope blocking k-sets");
    crossb_cmd->add_option("--m", cb_m, "number of axes")->required();
    crossb_cmd->add_option("--r", cb_r, "threshold ratio P/Q")->required();
    crossb_cmd->add_option("--k", cb_k, "subset size")->required();
    crossb_cmd->add_option("--antichain", cb_file, "antichain file")->required();
    crossb_cmd->add_option("--method", cb_method, "brute|double-ie|double-mobius|all");

    int layer = -1;
    auto* convex_cmd = app.add_subcommand("convex", "convex and free element sets");
    convex_cmd->add_option("file", file, "tope file")->required();
    convex_cmd->add_option("--layer", layer, "count j-subsets inside halfspaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (validate_cmd->parsed()) return cmd_validate(file);
    if (kappa_cmd->parsed()) return cmd_kappa(ka);
    if (cross_cmd->parsed())
        return cmd_crosscheck(file, k_text, methods_text, ell_text, out, threads);
    if (gen_cmd->parsed()) return cmd_gen(gen_t, gen_d, gen_seed, gen_out, threads);
    if (bool_cmd->parsed()) return cmd_bool_block(ba);
    if (crossb_cmd->parsed()) return cmd_cross_block(cb_m, cb_r, cb_k, cb_file, cb_method);
    if (convex_cmd->parsed()) return cmd_convex(file, layer);
    return kExitUsage;
}
