// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/covspec.h"

#include "covspec/errors.hpp"
#include "covspec/hypothesis.hpp"
#include "covspec/io.hpp"
#include "covspec/mp.hpp"
#include "covspec/simulate.hpp"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <string_view>
#include <vector>

struct covspec_matrix {
    covspec::Matrix value;
};

struct covspec_report {
    covspec::TestReport value;
};

struct covspec_scenario {
    covspec::sim::SimScenario value;
    bool seed_set = false;
};

struct covspec_summary {
    covspec::sim::SimSummary value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
covspec_status guarded(F&& f) noexcept {
    try {
        f();
        return COVSPEC_OK;
    } catch (const covspec::ValidationError& e) {
        g_last_error = e.what();
        return COVSPEC_ERR_INVALID;
    } catch (const covspec::NumericalError& e) {
        g_last_error = e.what();
        return COVSPEC_ERR_NUMERICAL;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return COVSPEC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return COVSPEC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return COVSPEC_ERR_INTERNAL;
    }
}

void require(bool cond, const char* what) {
    if (!cond) throw covspec::ValidationError(what);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

covspec::HypothesisSpec make_hypothesis(const covspec_test_options& opts, Eigen::Index p) {
    covspec::HypothesisSpec hyp;
    switch (opts.null_kind) {
        case COVSPEC_NULL_GENERAL:
            require(opts.sigma0 != nullptr, "general null needs sigma0");
            hyp.kind = covspec::NullKind::GeneralSigma0;
            hyp.sigma0 = opts.sigma0->value;
            break;
        case COVSPEC_NULL_IDENTITY: hyp.kind = covspec::NullKind::Identity; break;
        case COVSPEC_NULL_SPHERICITY: hyp.kind = covspec::NullKind::Sphericity; break;
        default: throw covspec::ValidationError("unknown null kind");
    }
    if (opts.known_mean) hyp.known_mean = Eigen::Map<const covspec::Vector>(opts.known_mean, p);
    return hyp;
}

covspec::CwstOptions make_cwst_options(const covspec_test_options& opts) {
    covspec::CwstOptions c;
    c.kappa = opts.kappa;
    c.beta = opts.beta;
    c.estimate_beta = opts.estimate_beta != 0;
    c.side = opts.side == COVSPEC_TAIL_TWO_SIDED ? covspec::Tail::TwoSided : covspec::Tail::Upper;
    return c;
}

covspec::TestKind to_kind(covspec_test_kind k) {
    switch (k) {
        case COVSPEC_TEST_CWST: return covspec::TestKind::Cwst;
        case COVSPEC_TEST_WST: return covspec::TestKind::Wst;
        case COVSPEC_TEST_LWT: return covspec::TestKind::Lwt;
        case COVSPEC_TEST_NHT: return covspec::TestKind::Nht;
    }
    throw covspec::ValidationError("unknown test kind");
}

covspec_test_kind from_kind(covspec::TestKind k) {
    switch (k) {
        case covspec::TestKind::Cwst: return COVSPEC_TEST_CWST;
        case covspec::TestKind::Wst: return COVSPEC_TEST_WST;
        case covspec::TestKind::Lwt: return COVSPEC_TEST_LWT;
        case covspec::TestKind::Nht: return COVSPEC_TEST_NHT;
    }
    return COVSPEC_TEST_CWST;
}

}  // namespace

extern "C" {

const char* covspec_last_error(void) { return g_last_error.c_str(); }

const char* covspec_version(void) { return "0.1.0"; }

void covspec_string_free(char* s) { std::free(s); }

covspec_status covspec_matrix_create(size_t rows, size_t cols, const double* row_major, covspec_matrix** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        require(row_major != nullptr || rows * cols == 0, "null data pointer");
        auto m = std::make_unique<covspec_matrix>();
        m->value.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) m->value(i, j) = row_major[i * cols + j];
        *out = m.release();
    });
}

covspec_status covspec_matrix_read_csv(const char* path, covspec_matrix** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        auto m = std::make_unique<covspec_matrix>();
        m->value = covspec::io::read_csv(path);
        *out = m.release();
    });
}

covspec_status covspec_matrix_write_csv(const covspec_matrix* m, const char* path) {
    return guarded([&] {
        require(m != nullptr && path != nullptr, "null argument");
        covspec::io::write_csv(std::string(path), m->value);
    });
}

size_t covspec_matrix_rows(const covspec_matrix* m) { return m ? static_cast<size_t>(m->value.rows()) : 0; }

size_t covspec_matrix_cols(const covspec_matrix* m) { return m ? static_cast<size_t>(m->value.cols()) : 0; }

covspec_status covspec_matrix_copy(const covspec_matrix* m, double* row_major, size_t len) {
    return guarded([&] {
        require(m != nullptr && row_major != nullptr, "null argument");
        const auto rows = static_cast<size_t>(m->value.rows());
        const auto cols = static_cast<size_t>(m->value.cols());
        require(len >= rows * cols, "destination buffer too small");
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) row_major[i * cols + j] = m->value(i, j);
    });
}

void covspec_matrix_free(covspec_matrix* m) { delete m; }

void covspec_test_options_init(covspec_test_options* opts) {
    if (!opts) return;
    opts->null_kind = COVSPEC_NULL_IDENTITY;
    opts->sigma0 = nullptr;
    opts->known_mean = nullptr;
    opts->alpha = 0.05;
    opts->side = COVSPEC_TAIL_UPPER;
    opts->kappa = 2;
    opts->beta = 0.0;
    opts->estimate_beta = 0;
}

covspec_status covspec_parse_test_kind(const char* name, covspec_test_kind* out) {
    return guarded([&] {
        require(name != nullptr && out != nullptr, "null argument");
        *out = from_kind(covspec::parse_test_kind(name));
    });
}

covspec_status covspec_parse_null_kind(const char* name, covspec_null_kind* out) {
    return guarded([&] {
        require(name != nullptr && out != nullptr, "null argument");
        switch (covspec::parse_null_kind(name)) {
            case covspec::NullKind::GeneralSigma0: *out = COVSPEC_NULL_GENERAL; break;
            case covspec::NullKind::Identity: *out = COVSPEC_NULL_IDENTITY; break;
            case covspec::NullKind::Sphericity: *out = COVSPEC_NULL_SPHERICITY; break;
        }
    });
}

covspec_status covspec_run_test(const covspec_matrix* data, covspec_test_kind kind, const covspec_test_options* opts,
                                covspec_report** out) {
    return guarded([&] {
        require(data != nullptr && opts != nullptr && out != nullptr, "null argument");
        const covspec::DataMatrix dm(data->value);
        const auto hyp = make_hypothesis(*opts, dm.p());
        auto r = std::make_unique<covspec_report>();
        r->value = covspec::run_test(to_kind(kind), dm, hyp, opts->alpha, make_cwst_options(*opts));
        *out = r.release();
    });
}

double covspec_report_statistic(const covspec_report* r) { return r ? r->value.statistic : 0.0; }

double covspec_report_p_value(const covspec_report* r) { return r ? r->value.p_value : 1.0; }

int covspec_report_reject(const covspec_report* r) { return r && r->value.reject ? 1 : 0; }

int64_t covspec_report_df(const covspec_report* r) {
    if (!r) return 0;
    if (const auto* chi = std::get_if<covspec::ChiSquared>(&r->value.reference)) return chi->df;
    return 0;
}

covspec_status covspec_report_summary(const covspec_report* r, char** out) {
    return guarded([&] {
        require(r != nullptr && out != nullptr, "null argument");
        *out = dup_string(covspec::io::summary_line(r->value));
    });
}

covspec_status covspec_reports_to_json(const covspec_report* const* reports, size_t count, char** out) {
    return guarded([&] {
        require(out != nullptr && (reports != nullptr || count == 0), "null argument");
        std::vector<covspec::TestReport> values;
        values.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            require(reports[i] != nullptr, "null report in array");
            values.push_back(reports[i]->value);
        }
        *out = dup_string(covspec::io::reports_to_json(values));
    });
}

void covspec_report_free(covspec_report* r) { delete r; }

covspec_status covspec_wst_rescaled(const covspec_matrix* data, const covspec_test_options* opts, double* out) {
    return guarded([&] {
        require(data != nullptr && opts != nullptr && out != nullptr, "null argument");
        const covspec::DataMatrix dm(data->value);
        *out = covspec::wst_rescaled(dm, make_hypothesis(*opts, dm.p()));
    });
}

covspec_status covspec_mp_density(double x, double q, double* out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = covspec::mp::density(x, q);
    });
}

covspec_status covspec_mp_limit_F(double q, double* out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = covspec::mp::limit_F(q);
    });
}

covspec_status covspec_mp_limit_mean(double q, int kappa, double beta, double* out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = covspec::mp::limit_mean_or_zero({q, kappa, beta});
    });
}

covspec_status covspec_mp_limit_variance(double q, int kappa, double beta, double* out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = covspec::mp::limit_variance_or_zero({q, kappa, beta});
    });
}

covspec_status covspec_mp_quadrature_F(double q, double abs_tol, double* out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = covspec::mp::oracle_quadrature_F(q, abs_tol);
    });
}

covspec_status covspec_mp_clt_moments(double q, int kappa, double beta, size_t n, size_t reps, uint64_t seed,
                                      unsigned workers, covspec_clt_moments* out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        const auto m = covspec::mp::oracle_clt_moments({q, kappa, beta}, n, reps, seed, workers);
        *out = {m.mean, m.variance, m.stderr_mean, m.accepted, m.rejected, m.p};
    });
}

covspec_status covspec_scenario_create(covspec_scenario** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = new covspec_scenario{};
    });
}

covspec_status covspec_scenario_clone(const covspec_scenario* s, covspec_scenario** out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        *out = new covspec_scenario{*s};
    });
}

covspec_status covspec_scenario_set(covspec_scenario* s, const char* key, const char* value) {
    return guarded([&] {
        require(s != nullptr && key != nullptr && value != nullptr, "null argument");
        covspec::io::apply_scenario_setting(s->value, key, value);
        if (std::string_view(key) == "seed") s->seed_set = true;
    });
}

covspec_status covspec_scenario_load_file(covspec_scenario* s, const char* path) {
    return guarded([&] {
        require(s != nullptr && path != nullptr, "null argument");
        std::vector<std::string> keys;
        s->value = covspec::io::load_scenario_file(path, s->value, &keys);
        for (const auto& k : keys) s->seed_set |= k == "seed";
    });
}

int covspec_scenario_has_seed(const covspec_scenario* s) { return s && s->seed_set ? 1 : 0; }

covspec_status covspec_scenario_validate(const covspec_scenario* s) {
    return guarded([&] {
        require(s != nullptr, "null argument");
        s->value.validate();
    });
}

covspec_status covspec_scenario_sample(const covspec_scenario* s, size_t replication, covspec_matrix** out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        auto m = std::make_unique<covspec_matrix>();
        m->value = covspec::sim::gen_sample(s->value, replication).values();
        *out = m.release();
    });
}

void covspec_scenario_free(covspec_scenario* s) { delete s; }

size_t covspec_paper_grid_size(void) { return covspec::sim::paper_grid().size(); }

covspec_status covspec_paper_grid_point(size_t index, int64_t* n, int64_t* p, double* rho) {
    return guarded([&] {
        require(n != nullptr && p != nullptr && rho != nullptr, "null argument");
        const auto grid = covspec::sim::paper_grid();
        require(index < grid.size(), "grid index out of range");
        *n = grid[index].n;
        *p = grid[index].p;
        *rho = grid[index].rho;
    });
}

covspec_status covspec_simulate(const covspec_scenario* s, covspec_summary** out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        auto summary = std::make_unique<covspec_summary>();
        summary->value = covspec::sim::run_scenario(s->value);
        *out = summary.release();
    });
}

size_t covspec_summary_size(const covspec_summary* summary) {
    return summary ? summary->value.tallies.size() : 0;
}

covspec_status covspec_summary_tally(const covspec_summary* summary, size_t index, covspec_tally* out) {
    return guarded([&] {
        require(summary != nullptr && out != nullptr, "null argument");
        require(index < summary->value.tallies.size(), "tally index out of range");
        const auto& t = summary->value.tallies[index];
        *out = {from_kind(t.test), t.rejections, t.failures, t.reps, t.rate(), t.stderr_rate()};
    });
}

const char* covspec_summary_csv_header(void) {
    static const std::string header = covspec::io::summary_csv_header();
    return header.c_str();
}

covspec_status covspec_summary_to_csv(const covspec_summary* summary, char** out) {
    return guarded([&] {
        require(summary != nullptr && out != nullptr, "null argument");
        *out = dup_string(covspec::io::summary_csv_rows(summary->value));
    });
}

void covspec_summary_free(covspec_summary* summary) { delete summary; }

}  // extern "C"
