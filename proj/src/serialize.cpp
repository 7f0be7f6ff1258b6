#include "cool/serialize.hpp"

#include "cool/coolability.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace cool {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix JSON must be a non-empty array of rows");
    const int n = static_cast<int>(j.size());
    Matrix m(n, static_cast<int>(j.front().size()));
    for (int i = 0; i < n; ++i) {
        const json& row = j.at(i);
        if (static_cast<int>(row.size()) != m.cols())
            throw std::invalid_argument("matrix JSON rows have unequal lengths");
        for (int c = 0; c < m.cols(); ++c) {
            const json& e = row.at(c);
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix entries must be [re, im] pairs");
            m(i, c) = Cx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

SystemConfig parse_system_config(const json& j) {
    SystemConfig cfg;
    cfg.name = j.value("name", "");
    const bool has_builtin = j.contains("builtin");
    const bool has_explicit = j.contains("lindblad_terms");
    if (has_builtin == has_explicit)
        throw std::invalid_argument(
            "config must have exactly one of 'builtin' or 'lindblad_terms'");

    if (has_builtin) {
        const std::string tag = j.at("builtin").get<std::string>();
        cfg.g1 = j.value("gamma1", 1.0);
        cfg.g2 = j.value("gamma2", 2.0);
        cfg.nu = j.value("nu", 0.5);
        if (tag == "lambda") {
            cfg.builtin = BuiltinTag::lambda;
            cfg.system = make_lambda_system(cfg.g1, cfg.g2);
        } else if (tag == "vsys") {
            cfg.builtin = BuiltinTag::vsys;
            cfg.system = make_v_system(cfg.g1, cfg.g2);
        } else if (tag == "spinspin") {
            cfg.builtin = BuiltinTag::spinspin;
            cfg.system = make_spin_spin();
        } else if (tag == "qubit_rank_one") {
            if (cfg.nu < 0.0 || cfg.nu >= 1.0)
                throw std::invalid_argument("qubit_rank_one: nu must be in [0,1)");
            cfg.builtin = BuiltinTag::qubit_rank_one;
            cfg.system.h0 = Matrix::Zero(2, 2);
            Matrix v(2, 2);
            v << 0, 1, cfg.nu, 0;
            cfg.system.terms = {v};
        } else {
            throw std::invalid_argument("unknown builtin tag: " + tag);
        }
    } else {
        std::vector<Matrix> terms;
        for (const json& t : j.at("lindblad_terms"))
            terms.push_back(matrix_from_json(t));
        if (terms.empty())
            throw std::invalid_argument("lindblad_terms must be non-empty");
        const int n = static_cast<int>(terms.front().rows());
        cfg.system.h0 = j.contains("hamiltonian")
                            ? hermitize(matrix_from_json(j.at("hamiltonian")))
                            : Matrix::Zero(n, n);
        cfg.system.terms = std::move(terms);
        if (j.contains("dimension") && j.at("dimension").get<int>() != n)
            throw std::invalid_argument("declared dimension does not match matrices");
    }
    cfg.system.validate();
    return cfg;
}

json verdict_to_json(const CoolabilityVerdict& v) {
    json out;
    out["coolable"] = v.coolable;
    if (v.witness) {
        json w = json::array();
        for (int i = 0; i < v.witness->size(); ++i)
            w.push_back({(*v.witness)(i).real(), (*v.witness)(i).imag()});
        out["witness"] = std::move(w);
    }
    out["common_eigenvector_rays"] = json::array();
    for (const CommonEigRay& ray : v.diagnostics.rays) {
        json r = json::array();
        for (int i = 0; i < ray.vec.size(); ++i)
            r.push_back({ray.vec(i).real(), ray.vec(i).imag()});
        out["common_eigenvector_rays"].push_back(std::move(r));
    }
    out["continuum"] = v.diagnostics.continuum;
    return out;
}

json schedule_to_json(const CoolingSchedule& s) {
    json segs = json::array();
    for (const CoolingSchedule::Segment& seg : s.segments) {
        json perm = json::array();
        for (int i = 0; i < seg.perm.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < seg.perm.cols(); ++j) row.push_back(seg.perm(i, j));
            perm.push_back(std::move(row));
        }
        segs.push_back({{"permutation", perm}, {"duration", seg.duration}});
    }
    return {{"segments", segs}, {"total_time", s.total_time()}};
}

json report_to_json(const ConjectureReport& r) {
    json out;
    out["lam_count"] = r.lam_count;
    out["sample_count"] = r.sample_count;
    out["tolerance"] = r.tolerance;
    out["max_violation"] = r.max_violation;
    if (r.worst_lam.size() > 0) {
        out["worst_lam"] = std::vector<double>(r.worst_lam.data(),
                                              r.worst_lam.data() + r.worst_lam.size());
        out["worst_unitary"] = matrix_to_json(r.worst_unitary);
        out["worst_derivative"] = std::vector<double>(
            r.worst_derivative.data(),
            r.worst_derivative.data() + r.worst_derivative.size());
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << contents;
    }
    fs::rename(tmp, target);
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace cool
