#include "topecom/oriented_matroid.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace topecom {

OrientedMatroid::OrientedMatroid(int t, std::vector<SignVector> topes)
    : t_(t), topes_(std::move(topes)) {
    if (t < 1 || t > 64) throw Error("ground set size out of range: " + std::to_string(t));
    for (const auto& sv : topes_)
        if (sv.ground_size() != t)
            throw Error("tope " + sv.str() + " does not match ground set size " + std::to_string(t));
}

std::optional<int> OrientedMatroid::find_tope(const SignVector& sv) const {
    for (int i = 0; i < num_topes(); ++i)
        if (topes_[i] == sv) return i;
    return std::nullopt;
}

int OrientedMatroid::negation_of(int i) const {
    auto j = find_tope(tope(i).negated());
    if (!j) throw Error("tope " + tope(i).str() + " has no negation in the set");
    return *j;
}

Mask OrientedMatroid::positive_tope_mask(int element) const {
    if (num_topes() > 64)
        throw CapExceeded("tope-set masks support at most 64 topes; instance has " +
                          std::to_string(num_topes()));
    Mask m = 0;
    for (int i = 0; i < num_topes(); ++i)
        if (topes_[i].is_positive(element)) m |= bit(i);
    return m;
}

Mask OrientedMatroid::negative_tope_mask(int element) const {
    return ~positive_tope_mask(element) & all_topes_mask();
}

Mask OrientedMatroid::all_topes_mask() const {
    if (num_topes() > 64)
        throw CapExceeded("tope-set masks support at most 64 topes; instance has " +
                          std::to_string(num_topes()));
    return full_mask(num_topes());
}

std::string ValidationReport::summary() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].detail;
    }
    return os.str();
}

ValidationReport validate(const OrientedMatroid& om) {
    ValidationReport rep;
    const auto& topes = om.topes();
    const int n = om.num_topes();
    const int t = om.ground_size();

    if (n == 0) {
        rep.violations.push_back({Violation::Kind::EmptyTopeSet, "tope set is empty"});
        return rep;
    }

    std::unordered_map<Mask, int> seen;
    for (int i = 0; i < n; ++i) {
        auto [it, fresh] = seen.emplace(topes[i].positives(), i);
        if (!fresh)
            rep.violations.push_back({Violation::Kind::DuplicateTope,
                                      "tope " + topes[i].str() + " listed at positions " +
                                          std::to_string(it->second) + " and " + std::to_string(i)});
    }

    for (int i = 0; i < n; ++i) {
        Mask neg = ~topes[i].positives() & full_mask(t);
        if (!seen.count(neg))
            rep.violations.push_back({Violation::Kind::SymmetryBroken,
                                      "tope " + topes[i].str() + " has no negation present"});
    }

    // column comparison over distinct topes only, so duplicates cannot mask a
    // parallel pair
    for (int e = 1; e <= t; ++e) {
        for (int f = e + 1; f <= t; ++f) {
            bool all_equal = true, all_opposite = true;
            for (int i = 0; i < n; ++i) {
                bool pe = topes[i].is_positive(e), pf = topes[i].is_positive(f);
                if (pe != pf) all_equal = false;
                if (pe == pf) all_opposite = false;
            }
            if (all_equal)
                rep.violations.push_back({Violation::Kind::ParallelElements,
                                          "elements " + std::to_string(e) + " and " + std::to_string(f) +
                                              " have identical sign columns"});
            else if (all_opposite)
                rep.violations.push_back({Violation::Kind::AntiparallelElements,
                                          "elements " + std::to_string(e) + " and " + std::to_string(f) +
                                              " have opposite sign columns"});
        }
    }

    if (seen.count(full_mask(t)))
        rep.violations.push_back({Violation::Kind::Acyclic, "the all-plus tope is present"});
    else if (seen.count(Mask{0}))
        rep.violations.push_back({Violation::Kind::Acyclic, "the all-minus tope is present"});

    return rep;
}

Halfspace halfspace(const OrientedMatroid& om, int element, int sign) {
    if (element < 1 || element > om.ground_size())
        throw Error("element " + std::to_string(element) + " out of range");
    if (sign != +1 && sign != -1) throw Error("sign must be +1 or -1");
    Halfspace h{element, sign, {}};
    for (int i = 0; i < om.num_topes(); ++i)
        if (om.tope(i).sign(element) == sign) h.members.push_back(i);
    return h;
}

OrientedMatroid reorient(const OrientedMatroid& om, Mask elements) {
    if (elements & ~full_mask(om.ground_size()))
        throw Error("reorientation set exceeds ground set");
    std::vector<SignVector> flipped;
    flipped.reserve(om.num_topes());
    for (const auto& sv : om.topes()) flipped.push_back(sv.reoriented(elements));
    return OrientedMatroid(om.ground_size(), std::move(flipped));
}

std::vector<int> max_positive_topes(const OrientedMatroid& om) {
    std::vector<int> out;
    const int n = om.num_topes();
    for (int i = 0; i < n; ++i) {
        Mask pi = om.tope(i).positives();
        bool maximal = true;
        for (int j = 0; j < n && maximal; ++j) {
            Mask pj = om.tope(j).positives();
            if (j != i && pi != pj && contains(pj, pi)) maximal = false;
        }
        if (maximal) out.push_back(i);
    }
    return out;
}

namespace {

std::string strip(const std::string& line) {
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = line.find_last_not_of(" \t\r\n");
    return line.substr(b, e - b + 1);
}

} // namespace

OrientedMatroid parse_topes(const std::string& text, bool validate_result) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int t = -1;
    bool half = false;
    bool saw_rows = false;
    std::vector<SignVector> rows;
    std::unordered_map<Mask, int> row_lines;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;

        if (line.rfind("t ", 0) == 0 || line == "t") {
            if (saw_rows || t != -1)
                throw ParseError(ParseError::Kind::MalformedLine, lineno,
                                 "line " + std::to_string(lineno) + ": unexpected 't' directive");
            try {
                std::size_t pos = 0;
                t = std::stoi(line.substr(1), &pos);
            } catch (const std::logic_error&) {
                t = -1;
            }
            if (t < 1 || t > 64)
                throw ParseError(ParseError::Kind::MalformedLine, lineno,
                                 "line " + std::to_string(lineno) + ": bad ground set size");
            continue;
        }
        if (line.rfind("symmetry", 0) == 0) {
            if (saw_rows)
                throw ParseError(ParseError::Kind::MalformedLine, lineno,
                                 "line " + std::to_string(lineno) + ": 'symmetry' after tope rows");
            std::string mode = strip(line.substr(8));
            if (mode == "full") half = false;
            else if (mode == "half") half = true;
            else
                throw ParseError(ParseError::Kind::MalformedLine, lineno,
                                 "line " + std::to_string(lineno) + ": symmetry must be full or half");
            continue;
        }

        if (t == -1)
            throw ParseError(ParseError::Kind::MalformedLine, lineno,
                             "line " + std::to_string(lineno) + ": tope row before 't' directive");
        if (static_cast<int>(line.size()) != t ||
            line.find_first_not_of("+-") != std::string::npos)
            throw ParseError(ParseError::Kind::MalformedLine, lineno,
                             "line " + std::to_string(lineno) + ": expected " + std::to_string(t) +
                                 " signs over {+,-}, got '" + line + "'");
        saw_rows = true;
        SignVector sv = SignVector::parse(line);
        auto [it, fresh] = row_lines.emplace(sv.positives(), lineno);
        if (!fresh)
            throw ParseError(ParseError::Kind::DuplicateTope, lineno,
                             "line " + std::to_string(lineno) + ": duplicate tope " + line +
                                 " (first at line " + std::to_string(it->second) + ")");
        rows.push_back(sv);
    }

    if (t == -1)
        throw ParseError(ParseError::Kind::MalformedLine, 0, "missing 't' directive");
    if (rows.empty())
        throw ParseError(ParseError::Kind::MalformedLine, 0, "no tope rows");

    if (half) {
        for (const auto& sv : rows) {
            auto it = row_lines.find(sv.negated().positives());
            if (it != row_lines.end())
                throw ParseError(ParseError::Kind::SymmetryViolation, it->second,
                                 "half-symmetry listing contains the opposite pair " + sv.str() +
                                     " / " + sv.negated().str());
        }
        std::vector<SignVector> closed = rows;
        for (const auto& sv : rows) closed.push_back(sv.negated());
        rows = std::move(closed);
    } else {
        for (const auto& sv : rows)
            if (!row_lines.count(sv.negated().positives()))
                throw ParseError(ParseError::Kind::SymmetryViolation, row_lines[sv.positives()],
                                 "tope " + sv.str() + " has no negation present");
    }

    OrientedMatroid om(t, std::move(rows));
    if (validate_result) {
        auto rep = validate(om);
        if (!rep.ok()) throw ValidationFailure("tope set invalid: " + rep.summary());
    }
    return om;
}

OrientedMatroid load_topes_file(const std::string& path, bool validate_result) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_topes(buf.str(), validate_result);
}

std::string serialize(const OrientedMatroid& om) {
    std::ostringstream os;
    os << "t " << om.ground_size() << "\n";
    os << "symmetry full\n";
    for (const auto& sv : om.topes()) os << sv.str() << "\n";
    return os.str();
}

} // namespace topecom
