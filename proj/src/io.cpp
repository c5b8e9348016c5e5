#include "wfield/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wfield {

using nlohmann::json;

namespace {

json jc(cplx z) { return json::array({z.real(), z.imag()}); }

json jvec(std::span<const cplx> v) {
    json a = json::array();
    for (const cplx& z : v) a.push_back(jc(z));
    return a;
}

json jpoly(const ConvexPolygon& p) { return jvec(p.v); }

json jmatrix(const CMatrix& a) {
    json j;
    j["n"] = a.n();
    j["entries"] = jvec(a.data());
    return j;
}

json jverdict(const ProductVerdict& v) {
    json j;
    j["verdict"] = to_string(v.verdict);
    j["distance_estimate"] = v.distance_estimate;
    if (v.witness) {
        j["witness_pair"] = {{"z", jc(v.witness->first)}, {"b", jc(v.witness->second)}};
    }
    if (v.verdict == Verdict::Out) j["certificate_margin"] = v.certificate_margin;
    return j;
}

json jradii(const RadiiReport& r) {
    return json{{"w", r.w}, {"r", r.r}, {"norm", r.norm}, {"radialoid", r.radialoid},
                {"tol", r.tol}};
}

CMatrix matrix_from_parsed(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw InvalidInput("matrix JSON: expected {\"n\", \"entries\"}");
    const int n = j["n"].get<int>();
    if (n < 1) throw InvalidInput("matrix JSON: n must be >= 1");
    const auto& e = j["entries"];
    if (!e.is_array() || e.size() != static_cast<std::size_t>(n) * n)
        throw InvalidInput("matrix JSON: entries length must be n^2");
    std::vector<cplx> v;
    v.reserve(e.size());
    for (const auto& pair : e) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw InvalidInput("matrix JSON: each entry must be [re, im]");
        v.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    CMatrix m(n, std::move(v));
    if (!m.is_finite()) throw InvalidInput("matrix JSON: non-finite entry");
    return m;
}

} // namespace

CMatrix matrix_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("matrix JSON: parse error: ") + e.what());
    }
    return matrix_from_parsed(j);
}

CMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open matrix file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return matrix_from_json(ss.str());
}

std::string matrix_to_json(const CMatrix& a) { return jmatrix(a).dump(); }

std::string to_json(const SpectrumSet& s) {
    json j;
    j["eigenvalues"] = jvec(s.values);
    j["residuals"] = s.residuals;
    j["tol"] = s.tol;
    return j.dump();
}

std::string to_json(const RangeApprox& r) {
    json j;
    j["m"] = r.m;
    j["angles"] = r.angles;
    j["support_values"] = r.support_values;
    j["boundary_points"] = jvec(r.boundary_points);
    j["inner_polygon"] = jpoly(r.inner);
    j["outer_polygon"] = jpoly(r.outer);
    j["hausdorff_gap"] = r.hausdorff_gap;
    return j.dump();
}

std::string to_json(const RadiiReport& r) { return jradii(r).dump(); }

std::string to_json(const ProductVerdict& v) { return jverdict(v).dump(); }

std::string to_json(const ContainmentReport& r) {
    json j;
    j["overall"] = to_string(r.overall);
    j["max_violation_distance"] = r.max_violation_distance;
    json evs = json::array();
    for (const auto& ev : r.eigen_verdicts)
        evs.push_back({{"lambda", jc(ev.lambda)}, {"verdict", jverdict(ev.verdict)}});
    j["eigen_verdicts"] = evs;
    return j.dump();
}

std::string to_json(const ClassificationReport& r) {
    json j;
    j["is_psd_multiple"] = r.is_psd_multiple;
    if (r.phase) j["phase"] = *r.phase;
    j["normality_residual"] = r.normality_residual;
    j["radii"] = jradii(r.radii);
    if (r.w_attaining_mu) j["w_attaining_mu"] = jc(*r.w_attaining_mu);
    j["corner_hypothesis"] = to_string(r.corner_hypothesis);
    j["polygon_case"] = r.polygon_case;
    j["isolated_peak_case"] = r.isolated_peak_case;
    return j.dump();
}

std::string to_json(const WitnessCertificate& c) {
    json j;
    j["B"] = jmatrix(c.b);
    j["lambda"] = jc(c.lambda);
    j["verdict"] = jverdict(c.verdict);
    j["construction"] = to_string(c.construction);
    json p;
    if (c.params.mu) p["mu"] = jc(*c.params.mu);
    if (c.params.alpha1) p["alpha1"] = *c.params.alpha1;
    if (c.params.r1) p["r1"] = *c.params.r1;
    if (c.params.theta) p["theta"] = *c.params.theta;
    p["adjoint_flip"] = c.params.adjoint_flip;
    if (c.construction == Construction::RandomSearch) {
        p["seed"] = c.params.seed;
        p["trial"] = c.params.trial;
    }
    j["parameters"] = p;
    return j.dump();
}

std::string to_json(const FalsifyOutcome& o) {
    json j;
    j["status"] = to_string(o.status);
    if (o.certificate) j["certificate"] = json::parse(to_json(*o.certificate));
    j["notes"] = o.notes;
    return j.dump();
}

std::string to_json(const ReproResult& r) {
    json j;
    j["example_id"] = r.example_id;
    json cs = json::array();
    for (const ReproClaim& c : r.claims)
        cs.push_back({{"description", c.description},
                      {"expected", c.expected},
                      {"observed", c.observed},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
    j["claims"] = cs;
    j["overall_pass"] = r.overall_pass;
    return j.dump();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write: " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidInput("cannot rename into place: " + path);
}

} // namespace wfield
