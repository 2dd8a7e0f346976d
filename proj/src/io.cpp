// io.cpp — CSV and JSON serialization.

#include "pptmc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pptmc::io {

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.9g", v);
    return buffer;
}

void write_samples_csv(const std::filesystem::path& path, const scenarios::PpttSampleSet& set) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) {
        throw std::runtime_error("write_samples_csv: cannot open " + path.string());
    }
    out << "sample_index,seed,x_ppt,censored\n";
    for (const auto& sample : set.samples) {
        out << sample.stream_index << ',' << sample.seed_key << ','
            << format_double(sample.x_ppt) << ',' << (sample.censored ? 1 : 0) << '\n';
    }
    if (!out) {
        throw std::runtime_error("write_samples_csv: write failed for " + path.string());
    }
}

scenarios::PpttSampleSet read_samples_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("read_samples_csv: cannot open " + path.string());
    }
    scenarios::PpttSampleSet set;
    std::string line;
    long line_number = 0;

    auto fail = [&](const std::string& what) {
        throw std::runtime_error("read_samples_csv: " + what + " at line " +
                                 std::to_string(line_number) + " of " + path.string());
    };

    if (!std::getline(in, line)) {
        line_number = 1;
        fail("empty file");
    }
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "sample_index,seed,x_ppt,censored") {
        fail("unexpected header");
    }

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        scenarios::PpttSample sample;
        try {
            if (!std::getline(ss, field, ',')) fail("missing sample_index");
            sample.stream_index = std::stoull(field);
            if (!std::getline(ss, field, ',')) fail("missing seed");
            sample.seed_key = std::stoull(field);
            if (!std::getline(ss, field, ',')) fail("missing x_ppt");
            sample.x_ppt = std::stod(field);
            if (!std::getline(ss, field, ',')) fail("missing censored flag");
            if (field == "0") {
                sample.censored = false;
            } else if (field == "1") {
                sample.censored = true;
            } else {
                fail("censored flag must be 0 or 1");
            }
        } catch (const std::invalid_argument&) {
            fail("malformed number");
        } catch (const std::out_of_range&) {
            fail("number out of range");
        }
        set.samples.push_back(sample);
    }
    return set;
}

nlohmann::json spec_to_json(const scenarios::ScenarioSpec& spec) {
    nlohmann::json j;
    j["subsystem_dims"] = spec.subsystem_dims;
    j["correlation"] = scenarios::to_string(spec.correlation);
    j["trace_rule"] = scenarios::to_string(spec.trace_rule);
    if (spec.trace_rule == scenarios::TraceRule::Explicit) {
        j["trace_values"] = spec.trace_values;
    }
    j["rank_rule"] = scenarios::to_string(spec.rank_rule);
    if (spec.rank_rule == scenarios::RankRule::Explicit) {
        j["rank_values"] = spec.rank_values;
    }
    j["k"] = spec.k;
    j["gamma"] = spec.gamma;
    return j;
}

scenarios::ScenarioSpec spec_from_json(const nlohmann::json& j) {
    scenarios::ScenarioSpec spec;
    spec.subsystem_dims = j.at("subsystem_dims").get<std::vector<int>>();
    const std::string correlation = j.at("correlation").get<std::string>();
    if (correlation == "glb") {
        spec.correlation = scenarios::Correlation::Glb;
    } else if (correlation == "iloc") {
        spec.correlation = scenarios::Correlation::Iloc;
    } else if (correlation == "cloc") {
        spec.correlation = scenarios::Correlation::Cloc;
    } else {
        throw std::runtime_error("spec_from_json: unknown correlation " + correlation);
    }
    const std::string trace = j.at("trace_rule").get<std::string>();
    if (trace == "canonical") {
        spec.trace_rule = scenarios::TraceRule::Canonical;
    } else if (trace == "superlinear") {
        spec.trace_rule = scenarios::TraceRule::SuperLinear;
    } else if (trace == "explicit") {
        spec.trace_rule = scenarios::TraceRule::Explicit;
        spec.trace_values = j.at("trace_values").get<std::vector<double>>();
    } else {
        throw std::runtime_error("spec_from_json: unknown trace rule " + trace);
    }
    const std::string rank = j.at("rank_rule").get<std::string>();
    if (rank == "full") {
        spec.rank_rule = scenarios::RankRule::Full;
    } else if (rank == "matched") {
        spec.rank_rule = scenarios::RankRule::Matched;
    } else if (rank == "explicit") {
        spec.rank_rule = scenarios::RankRule::Explicit;
        spec.rank_values = j.at("rank_values").get<std::vector<int>>();
    } else {
        throw std::runtime_error("spec_from_json: unknown rank rule " + rank);
    }
    spec.k = j.at("k").get<double>();
    spec.gamma = j.at("gamma").get<double>();
    return spec;
}

nlohmann::json matrix_to_json(const linalg::Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

linalg::Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::runtime_error("matrix_from_json: expected a non-empty array of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    linalg::Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(i);
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::runtime_error("matrix_from_json: ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& entry = row.at(c);
            m(i, c) = linalg::Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return m;
}

nlohmann::json generator_to_json(const gksl::GkslGenerator& gen, const nlohmann::json& provenance) {
    nlohmann::json j;
    j["dim"] = gen.dim_d;
    j["gamma"] = gen.gamma;
    j["k"] = gen.k;
    j["hamiltonian"] = matrix_to_json(gen.hamiltonian);
    j["kossakowski"] = matrix_to_json(gen.kossakowski.matrix);
    j["trace_target"] = gen.kossakowski.trace_target;
    j["rank_bound"] = gen.kossakowski.rank_bound;
    // Pins how the Kossakowski entries are to be read back: {dim} means the
    // canonical basis, several entries mean the product basis on those blocks.
    j["basis_dims"] = gen.basis_dims;
    if (!provenance.is_null()) {
        j["provenance"] = provenance;
    }
    return j;
}

gksl::GkslGenerator generator_from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    ensembles::KossakowskiMatrix k;
    k.dim_d = dim;
    k.matrix = matrix_from_json(j.at("kossakowski"));
    k.trace_target = j.value("trace_target", 0.0);
    k.rank_bound = j.value("rank_bound", dim * dim - 1);
    linalg::Matrix h;
    if (j.contains("hamiltonian") && !j.at("hamiltonian").empty()) {
        h = matrix_from_json(j.at("hamiltonian"));
    }
    std::vector<int> basis_dims = j.value("basis_dims", std::vector<int>{dim});
    if (basis_dims.empty()) {
        basis_dims = {dim};
    }
    linalg::OperatorBasis basis;
    if (basis_dims.size() == 1) {
        basis = linalg::gell_mann_basis(dim);
    } else {
        std::vector<linalg::OperatorBasis> local;
        local.reserve(basis_dims.size());
        for (int d : basis_dims) {
            local.push_back(linalg::gell_mann_basis(d));
        }
        basis = gksl::product_basis(local);
    }
    return gksl::make_generator(j.at("gamma").get<double>(), j.at("k").get<double>(),
                                std::move(h), std::move(k), std::move(basis), basis_dims);
}

nlohmann::json summary_stats_to_json(const stats::SummaryStats& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["censored"] = s.censored_count;
    j["mean"] = s.mean;
    j["median"] = s.median;
    j["min"] = s.min;
    j["stdev"] = s.stdev;
    j["stdev_convention"] = "sample (n-1)";
    return j;
}

nlohmann::json gamma_fit_to_json(const stats::FitParams3PGamma& fit) {
    nlohmann::json j;
    j["shape"] = fit.shape;
    j["scale"] = fit.scale;
    j["threshold"] = fit.threshold;
    j["loglik"] = fit.loglik;
    j["implied_mean"] = fit.implied_mean();
    j["implied_stdev"] = fit.implied_stdev();
    return j;
}

nlohmann::json lognormal_fit_to_json(const stats::FitParams3PLognormal& fit) {
    nlohmann::json j;
    j["location"] = fit.location;
    j["scale"] = fit.scale;
    j["threshold"] = fit.threshold;
    j["loglik"] = fit.loglik;
    j["implied_mean"] = fit.implied_mean();
    j["implied_stdev"] = fit.implied_stdev();
    return j;
}

}  // namespace pptmc::io
