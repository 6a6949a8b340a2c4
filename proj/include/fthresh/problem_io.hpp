#pragma once

#include "fthresh/frobenius.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

namespace fthresh {

using Json = nlohmann::ordered_json;

struct ProblemFile {
    DualPairPtr pair;
    std::map<std::string, MonomialIdeal> ideals;
    std::optional<Int> p;
    std::optional<unsigned> e_max;
    OracleConfig oracle;
};

namespace detail {

inline IVector parse_ivector(const Json& j, const std::string& field) {
    if (!j.is_array()) throw Error("parse error at " + field + ": expected an integer array");
    IVector v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw Error("parse error at " + field + ": expected integer entries");
        v.emplace_back(x.get<std::int64_t>());
    }
    return v;
}

inline std::vector<IVector> parse_vectors(const Json& j, const std::string& field) {
    if (!j.is_array()) throw Error("parse error at " + field + ": expected an array of vectors");
    std::vector<IVector> out;
    std::size_t i = 0;
    for (const auto& row : j) out.push_back(parse_ivector(row, field + "[" + std::to_string(i++) + "]"));
    return out;
}

inline Json ivector_json(const IVector& v) {
    Json arr = Json::array();
    for (const Int& x : v) arr.push_back(x.convert_to<std::int64_t>());
    return arr;
}

inline Json vectors_json(const std::vector<IVector>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(ivector_json(v));
    return arr;
}

inline Json qvector_json(const QVector& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(fraction_string(x));
    return arr;
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const std::exception& ex) {
        throw Error(std::string("parse error: ") + ex.what());
    }
    if (!root.is_object()) throw Error("parse error: problem file must be a JSON object");
    if (!root.contains("cone") || !root["cone"].is_object() || !root["cone"].contains("rays"))
        throw Error("parse error at cone.rays: missing");

    ProblemFile pf;
    pf.pair = make_dual_pair(detail::parse_vectors(root["cone"]["rays"], "cone.rays"));
    if (root.contains("ideals")) {
        if (!root["ideals"].is_object())
            throw Error("parse error at ideals: expected an object of named ideals");
        for (const auto& [name, spec] : root["ideals"].items()) {
            if (!spec.is_object() || !spec.contains("generators"))
                throw Error("parse error at ideals." + name + ".generators: missing");
            pf.ideals.emplace(name, make_ideal(pf.pair, detail::parse_vectors(
                                                   spec["generators"],
                                                   "ideals." + name + ".generators")));
        }
    }
    if (root.contains("p")) {
        if (!root["p"].is_number_integer()) throw Error("parse error at p: expected an integer");
        pf.p = Int(root["p"].get<std::int64_t>());
    }
    if (root.contains("e_max")) {
        if (!root["e_max"].is_number_unsigned())
            throw Error("parse error at e_max: expected a nonnegative integer");
        pf.e_max = root["e_max"].get<unsigned>();
    }
    if (root.contains("oracle_budget")) {
        if (!root["oracle_budget"].is_number_unsigned())
            throw Error("parse error at oracle_budget: expected a nonnegative integer");
        pf.oracle.max_states = root["oracle_budget"].get<std::uint64_t>();
    }
    if (root.contains("max_q")) {
        if (!root["max_q"].is_number_unsigned())
            throw Error("parse error at max_q: expected a nonnegative integer");
        pf.oracle.max_q = Int(root["max_q"].get<std::uint64_t>());
    }
    return pf;
}

inline ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

// Named ideal lookup; "m" falls back to the maximal monomial ideal when
// the file does not define it.
inline MonomialIdeal resolve_ideal(const ProblemFile& pf, const std::string& name) {
    const auto it = pf.ideals.find(name);
    if (it != pf.ideals.end()) return it->second;
    if (name == "m") return maximal_monomial_ideal(pf.pair);
    throw Error("unknown ideal '" + name + "'");
}

struct CommandFlags {
    std::string ideal;
    std::string with{"m"};
    unsigned count{1};
    std::string exponent;
    std::optional<std::int64_t> p;
    std::optional<unsigned> e;
    std::optional<unsigned> e_max;
    std::optional<std::uint64_t> budget;
};

struct RunResult {
    Json doc;
    std::string csv;  // nonempty only for `report`
    int exit_code{0};
};

namespace detail {

inline MonomialIdeal need_ideal(const ProblemFile& pf, const CommandFlags& flags) {
    if (flags.ideal.empty()) throw Error("missing --ideal");
    return resolve_ideal(pf, flags.ideal);
}

inline Int need_p(const ProblemFile& pf, const CommandFlags& flags) {
    if (flags.p) return Int(*flags.p);
    if (pf.p) return *pf.p;
    throw Error("missing prime: pass --p or set \"p\" in the problem file");
}

inline Json threshold_json(const ThresholdValue& tv) {
    Json j;
    j["value"] = fraction_string(tv.value);
    j["witness"] = qvector_json(tv.witness);
    switch (tv.method) {
        case ThresholdValue::Method::Lp: j["method"] = "lp"; break;
        case ThresholdValue::Method::Cells: j["method"] = "cells"; break;
        case ThresholdValue::Method::Candidates: j["method"] = "candidates"; break;
    }
    return j;
}

inline std::string convergence_csv(const ConvergenceTable& table) {
    std::ostringstream csv;
    csv << "e,q,nu,ratio,limit\n";
    for (const auto& row : table.rows) {
        csv << row.e << "," << row.q << ",";
        if (row.nu) csv << *row.nu;
        csv << ",";
        if (row.ratio) csv << fraction_string(*row.ratio);
        csv << "," << fraction_string(table.limit) << "\n";
    }
    return csv.str();
}

}  // namespace detail

inline RunResult run_command(const std::string& command, const ProblemFile& pf,
                             const CommandFlags& flags) {
    OracleConfig oracle = pf.oracle;
    if (flags.budget) oracle.max_states = *flags.budget;

    RunResult res;
    Json& doc = res.doc;
    doc["command"] = command;
    for (const auto& w : pf.pair->warnings) doc["warnings"].push_back(w);

    if (command == "dual") {
        doc["rays"] = detail::vectors_json(pf.pair->sigma.rays);
        doc["dual_rays"] = detail::vectors_json(pf.pair->sigma_dual.rays);
        doc["dual_facet_normals"] = detail::vectors_json(pf.pair->sigma_dual.facet_normals);
        doc["simplicial"] = is_simplicial(pf.pair->sigma);
        doc["smooth"] = is_smooth(pf.pair->sigma);
    } else if (command == "hilbert") {
        doc["hilbert_basis"] = detail::vectors_json(hilbert_basis(*pf.pair));
    } else if (command == "gorenstein") {
        const GorensteinData gd = gorenstein_data(*pf.pair);
        if (gd.omega) {
            doc["omega"] = detail::qvector_json(*gd.omega);
            doc["index"] = gd.index.convert_to<std::int64_t>();
            doc["unique"] = gd.unique;
            if (!gd.unique)
                doc["warnings"].push_back("non-unique Gorenstein point (underdetermined system)");
        } else {
            doc["omega"] = nullptr;
        }
    } else if (command == "fpt") {
        const MonomialIdeal a = detail::need_ideal(pf, flags);
        doc["ideal"] = flags.ideal;
        doc.update(detail::threshold_json(fpt(a)));
    } else if (command == "fthreshold") {
        const MonomialIdeal a = detail::need_ideal(pf, flags);
        const MonomialIdeal j = resolve_ideal(pf, flags.with);
        doc["ideal"] = flags.ideal;
        doc["with"] = flags.with;
        doc.update(detail::threshold_json(f_threshold(a, j)));
    } else if (command == "testideal") {
        const MonomialIdeal a = detail::need_ideal(pf, flags);
        if (flags.exponent.empty()) throw Error("missing --exponent");
        const Rational c = parse_rational(flags.exponent);
        doc["ideal"] = flags.ideal;
        doc["exponent"] = fraction_string(c);
        try {
            const MonomialIdeal tau = test_ideal_generators(a, c);
            doc["generators"] = detail::vectors_json(tau.generators);
            doc["unit"] = tau.is_unit();
        } catch (const EnumerationBoundExceeded& ex) {
            if (ex.partial) doc["generators"] = detail::vectors_json(ex.partial->generators);
            doc["warnings"].push_back("partial result: enumeration bound exceeded");
            res.exit_code = 2;
        }
    } else if (command == "jumping") {
        const MonomialIdeal a = detail::need_ideal(pf, flags);
        doc["ideal"] = flags.ideal;
        doc["count"] = flags.count;
        const JumpingChain chain = jumping_coefficients(a, flags.count);
        doc["coefficients"] = Json::array();
        doc["ideals"] = Json::array();
        for (std::size_t i = 0; i < chain.coefficients.size(); ++i) {
            doc["coefficients"].push_back(fraction_string(chain.coefficients[i]));
            doc["ideals"].push_back(detail::vectors_json(chain.ideals[i].generators));
        }
    } else if (command == "nu") {
        const MonomialIdeal a = detail::need_ideal(pf, flags);
        const MonomialIdeal j = resolve_ideal(pf, flags.with);
        if (!flags.e) throw Error("missing --e");
        const NuQuery query{a, j, detail::need_p(pf, flags), *flags.e};
        doc["ideal"] = flags.ideal;
        doc["with"] = flags.with;
        doc["p"] = query.p.convert_to<std::int64_t>();
        doc["e"] = query.e;
        const NuResult r = nu_with_witness(query, oracle);
        doc["q"] = detail::int_pow(query.p, query.e).convert_to<std::int64_t>();
        doc["nu"] = r.value;
        doc["witness"] = detail::ivector_json(r.witness);
    } else if (command == "report") {
        const MonomialIdeal a = detail::need_ideal(pf, flags);
        const MonomialIdeal j = resolve_ideal(pf, flags.with);
        const Int p = detail::need_p(pf, flags);
        unsigned e_max = flags.e_max ? *flags.e_max : pf.e_max ? *pf.e_max : 4;
        doc["ideal"] = flags.ideal;
        doc["with"] = flags.with;
        doc["p"] = p.convert_to<std::int64_t>();
        doc["e_max"] = e_max;
        const ConvergenceTable table = convergence_table(a, j, p, e_max, oracle);
        doc["rows"] = Json::array();
        for (const auto& row : table.rows) {
            Json r;
            r["e"] = row.e;
            r["q"] = row.q.convert_to<std::int64_t>();
            if (row.nu)
                r["nu"] = *row.nu;
            else
                r["nu"] = nullptr;
            if (row.ratio)
                r["ratio"] = fraction_string(*row.ratio);
            else
                r["ratio"] = nullptr;
            doc["rows"].push_back(std::move(r));
        }
        doc["limit"] = fraction_string(table.limit);
        if (!table.complete) {
            doc["warnings"].push_back("partial result: oracle budget exceeded on some rows");
            res.exit_code = 2;
        }
        res.csv = detail::convergence_csv(table);
    } else if (command == "regularity") {
        const MonomialIdeal a = detail::need_ideal(pf, flags);
        const RegularityReport rep = regularity_probe(a);
        doc["ideal"] = flags.ideal;
        doc["smooth"] = rep.smooth;
        doc["fpt"] = fraction_string(rep.fpt_value);
        doc["fthreshold"] = fraction_string(rep.fthreshold_value);
        doc["equal"] = rep.equal;
    } else {
        throw Error("unknown command '" + command + "'");
    }
    if (!doc.contains("warnings")) doc["warnings"] = Json::array();
    return res;
}

}  // namespace fthresh
