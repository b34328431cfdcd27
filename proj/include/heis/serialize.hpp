#pragma once

// JSON persistence for spectral tables and atoms, CSV/plot emission for
// sweep reports.  Doubles round-trip losslessly through nlohmann's
// shortest-representation printing; CSV uses %.17g with '.' decimal.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "heis/atoms.hpp"
#include "heis/paley.hpp"
#include "heis/transform.hpp"

namespace heis {

using json = nlohmann::json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- SpectralCoefficients ----

inline json to_json(const SpectralCoefficients& S) {
    json j;
    j["n"] = S.n;
    j["lambda_grid"] = S.lambda;
    j["weights"] = S.weight;
    j["alpha_max"] = S.alpha_max;
    j["m_max"] = S.m_max;
    j["laguerre_scale"] = S.laguerre_scale;
    j["tail_estimate"] = S.tail_estimate;
    json idx = json::array();
    for (const auto& si : S.index_set) idx.push_back({{"m", si.m}, {"alpha", si.alpha}});
    j["index_set"] = std::move(idx);
    json vals = json::array();
    for (const auto& col : S.values) {
        json row = json::array();
        for (const auto& v : col) row.push_back({v.real(), v.imag()});
        vals.push_back(std::move(row));
    }
    j["values"] = std::move(vals);
    return j;
}

inline SpectralCoefficients spectral_from_json(const json& j) {
    SpectralCoefficients S;
    S.n = j.at("n").get<int>();
    S.lambda = j.at("lambda_grid").get<std::vector<double>>();
    S.weight = j.at("weights").get<std::vector<double>>();
    S.alpha_max = j.at("alpha_max").get<int>();
    S.m_max = j.at("m_max").get<int>();
    S.laguerre_scale = j.at("laguerre_scale").get<double>();
    S.tail_estimate = j.at("tail_estimate").get<double>();
    for (const auto& e : j.at("index_set")) {
        SpectralIndex si;
        si.m = e.at("m").get<std::vector<int>>();
        si.alpha = e.at("alpha").get<std::vector<int>>();
        S.index_set.push_back(std::move(si));
    }
    for (const auto& row : j.at("values")) {
        std::vector<Complex> col;
        col.reserve(row.size());
        for (const auto& v : row) col.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        S.values.push_back(std::move(col));
    }
    if (S.values.size() != S.lambda.size())
        throw std::invalid_argument("spectral_from_json: inconsistent table dimensions");
    return S;
}

// ---- AtomSpec ----

inline json to_json(const AtomSpec& a) {
    json j;
    j["n"] = a.n;
    j["p"] = a.p;
    j["s"] = a.s;
    j["R"] = a.R;
    j["seed"] = a.seed;
    json basis;
    basis["kind"] = a.basis.kind == BumpBasis::Kind::SignBump ? "sign_bump" : "bump_cells";
    basis["r0"] = a.basis.r0;
    basis["t0"] = a.basis.t0;
    json pw = json::array();
    for (const auto& [u, v] : a.basis.powers) pw.push_back({u, v});
    basis["powers"] = std::move(pw);
    j["basis"] = std::move(basis);
    j["coefficients"] = a.coeffs;
    return j;
}

inline AtomSpec atom_from_json(const json& j) {
    AtomSpec a;
    a.n = j.at("n").get<int>();
    a.p = j.at("p").get<double>();
    a.s = j.at("s").get<int>();
    a.R = j.at("R").get<double>();
    a.seed = j.at("seed").get<unsigned>();
    const auto& basis = j.at("basis");
    const std::string kind = basis.at("kind").get<std::string>();
    a.basis.kind = kind == "sign_bump" ? BumpBasis::Kind::SignBump : BumpBasis::Kind::BumpCells;
    a.basis.r0 = basis.at("r0").get<double>();
    a.basis.t0 = basis.at("t0").get<double>();
    for (const auto& e : basis.at("powers"))
        a.basis.powers.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    a.coeffs = j.at("coefficients").get<std::vector<double>>();
    a.profile = detail::assemble_profile(a.basis, a.coeffs);
    return a;
}

// ---- sweep report ----

inline json to_json(const PaleySweepReport& rep) {
    json j;
    j["p"] = rep.params.p;
    j["sigma"] = rep.params.sigma;
    j["n"] = rep.params.n;
    j["mode"] = rep.params.probe ? "probe" : "theorem";
    j["reading"] = rep.config.reading == WeightReading::PerCoefficient ? "per_coefficient"
                                                                       : "hs_fixed_alpha";
    j["gamma_rule"] = rep.config.gamma.mode == GammaRule::Mode::Star
                          ? json{{"mode", "star"}}
                          : json{{"mode", "fixed"}, {"value", rep.config.gamma.fixed_value}};
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"R", r.R},
                        {"gamma", r.gamma},
                        {"S1", r.s1},
                        {"S2", r.s2},
                        {"LHS", r.lhs},
                        {"gamma_in_span", r.gamma_in_span}});
    j["rows"] = std::move(rows);
    j["slopes"] = {{"defined", rep.slopes_defined},
                   {"s1_R", rep.slope_s1},
                   {"s2_R", rep.slope_s2},
                   {"lhs_R", rep.slope_lhs}};
    j["predicted_exponents"] = {{"s1_R", rep.predicted.s1_R},
                                {"s1_gamma", rep.predicted.s1_gamma},
                                {"s2_R", rep.predicted.s2_R},
                                {"s2_gamma", rep.predicted.s2_gamma}};
    j["dilation_lhs_exponent"] = dilation_lhs_exponent(rep.params);
    j["lhs_ratio"] = rep.lhs_ratio;
    j["bound_factor"] = rep.config.bound_factor;
    j["divergent_small_R"] = rep.divergent_small_R;
    j["divergent_large_R"] = rep.divergent_large_R;
    j["bounded"] = rep.bounded;
    json cc = json::array();
    for (const auto& [R, rel] : rep.crosschecks) cc.push_back({{"R", R}, {"rel_diff", rel}});
    j["crosschecks"] = std::move(cc);
    return j;
}

inline std::string sweep_csv(const PaleySweepReport& rep) {
    std::ostringstream os;
    os << "p,sigma,n,R,gamma,S1,S2,LHS,bounded\n";
    for (const auto& r : rep.rows) {
        os << format_double(rep.params.p) << ',' << format_double(rep.params.sigma) << ','
           << rep.params.n << ',' << format_double(r.R) << ',' << format_double(r.gamma) << ','
           << format_double(r.s1) << ',' << format_double(r.s2) << ',' << format_double(r.lhs)
           << ',' << (rep.bounded ? 1 : 0) << '\n';
    }
    return os.str();
}

// two-column plot data: log10 R vs log10 S1 / log10 S2, and R vs LHS
inline std::string plot_loglog(const PaleySweepReport& rep, bool use_s1) {
    std::ostringstream os;
    os << "# log10(R)  log10(" << (use_s1 ? "S1" : "S2") << ")\n";
    for (const auto& r : rep.rows) {
        const double v = use_s1 ? r.s1 : r.s2;
        if (!(v > 0.0)) continue;
        os << format_double(std::log10(r.R)) << ' ' << format_double(std::log10(v)) << '\n';
    }
    return os.str();
}

inline std::string plot_lhs(const PaleySweepReport& rep) {
    std::ostringstream os;
    os << "# R  LHS\n";
    for (const auto& r : rep.rows)
        os << format_double(r.R) << ' ' << format_double(r.lhs) << '\n';
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f.good()) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f.good()) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f.good()) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace heis
