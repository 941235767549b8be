// Copyright 2026 The qlock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qlock/cli.h"
#include "qlock/design_metrics.h"
#include "qlock/protocol.h"
#include "qlock/security.h"

namespace qlock {

namespace {

struct GlobalOptions {
    bool csv = false;
    std::string seed;
    std::string out_path;
    size_t jobs = 1;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const char *flag(bool b) { return b ? "true" : "false"; }

std::string csv_row(const std::vector<std::string> &cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); i++) {
        if (i) {
            line += ',';
        }
        line += cells[i];
    }
    return line + "\n";
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
        throw std::invalid_argument("cannot write " + path);
    }
}

Seed128 resolve_seed(const GlobalOptions &g, std::ostream &err) {
    if (!g.seed.empty()) {
        return Seed128::from_hex(g.seed);
    }
    std::random_device rd;
    Seed128 s;
    s.hi = (uint64_t{rd()} << 32) | rd();
    s.lo = (uint64_t{rd()} << 32) | rd();
    err << "# seed " << s.to_hex() << "\n";
    return s;
}

BitString bits_or_zero(const std::string &text, size_t n, const char *what) {
    if (text.empty()) {
        return BitString(n);
    }
    BitString b = BitString::parse(text);
    if (b.size() != n) {
        throw std::invalid_argument(std::string(what) + " must have " + std::to_string(n) + " bits");
    }
    return b;
}

const std::map<std::string, SamplerMode> kEnsembles{
    {"approx", SamplerMode::kApproxDesign},
    {"uniform", SamplerMode::kUniformClifford},
    {"exhaustive", SamplerMode::kSingleQubitExhaustive},
};

PriorDistribution make_prior(size_t n, uint64_t support) {
    return support == 0 ? PriorDistribution::uniform(n) : PriorDistribution::uniform_subset(n, support);
}

// Each subcommand fills `body`; dispatch decides whether it goes to stdout or --out.
using Runner = std::function<void(const GlobalOptions &, std::string &body, std::ostream &err)>;

void add_keygen(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    auto *cmd = app.add_subcommand("keygen", "Draw a uniform key index in [0, K)");
    auto K = std::make_shared<uint64_t>(0);
    cmd->add_option("--K", *K, "Codebook size")->required()->check(CLI::PositiveNumber);
    runners[cmd] = [K](const GlobalOptions &g, std::string &body, std::ostream &err) {
        Rng rng(resolve_seed(g, err), StreamDomain::kKeygen, 0);
        SecretKey key = keygen(*K, rng);
        if (g.csv) {
            body = csv_row({"k", "key_bits"}) + csv_row({std::to_string(key.k), std::to_string(key_bits(*K))});
        } else {
            body = std::to_string(key.k) + "\n";
        }
    };
}

void add_codebook(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        size_t n = 0;
        uint64_t K = 0;
        double delta = 0.01;
        double depth = 1.0;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("codebook", "Build the public list of K circuits");
    cmd->add_option("--n", a->n, "Qubits")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--K", a->K, "Number of circuits")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--delta", a->delta, "Design accuracy")->capture_default_str();
    cmd->add_option("--depth-factor", a->depth, "Circuit length multiplier")->capture_default_str();
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &err) {
        body = Codebook::build(a->n, a->K, a->delta, resolve_seed(g, err), a->depth, g.jobs).serialize();
    };
}

void add_encrypt(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        std::string codebook;
        uint64_t key = 0;
        std::string x;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("encrypt", "Encrypt a bit string into a cipher tableau");
    cmd->add_option("--codebook", a->codebook, "Codebook file")->required();
    cmd->add_option("--key", a->key, "Key index")->required();
    cmd->add_option("--x", a->x, "Plaintext bits")->required();
    runners[cmd] = [a](const GlobalOptions &, std::string &body, std::ostream &) {
        Codebook cb = Codebook::parse(read_file(a->codebook));
        body = encrypt(cb, SecretKey{a->key}, BitString::parse(a->x)).serialize();
    };
}

void add_decrypt(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        std::string codebook;
        uint64_t key = 0;
        std::string cipher;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("decrypt", "Decrypt a cipher tableau");
    cmd->add_option("--codebook", a->codebook, "Codebook file")->required();
    cmd->add_option("--key", a->key, "Key index")->required();
    cmd->add_option("--cipher", a->cipher, "Cipher file")->required();
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &err) {
        Codebook cb = Codebook::parse(read_file(a->codebook));
        CipherState c = CipherState::parse(read_file(a->cipher));
        // Seed resolution is deferred so a correct-key decryption needs no randomness at all.
        Seed128 seed = g.seed.empty() ? Seed128{} : Seed128::from_hex(g.seed);
        Rng rng(seed, StreamDomain::kDecrypt, 0);
        Decryption d = decrypt(cb, SecretKey{a->key}, c, rng);
        if (!d.deterministic && g.seed.empty()) {
            seed = resolve_seed(g, err);
            rng = Rng(seed, StreamDomain::kDecrypt, 0);
            d = decrypt(cb, SecretKey{a->key}, c, rng);
        }
        if (g.csv) {
            std::vector<std::string> head{"x", "deterministic"};
            std::vector<std::string> row{d.x.str(), flag(d.deterministic)};
            if (!d.deterministic) {
                head.push_back("seed");
                row.push_back(seed.to_hex());
            }
            body = csv_row(head) + csv_row(row);
        } else {
            body = d.x.str() + " deterministic=" + flag(d.deterministic);
            if (!d.deterministic) {
                body += " seed=" + seed.to_hex();
            }
            body += "\n";
        }
    };
}

void add_moments(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        size_t n = 2;
        double delta = 0.01;
        uint64_t samples = 100000;
        std::string ensemble = "approx";
        std::string vectors = "basis";
        std::string alpha;
        std::string beta;
        double depth = 1.0;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("moments", "Estimate first and second overlap moments of a circuit ensemble");
    cmd->add_option("--n", a->n, "Qubits")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--delta", a->delta, "Design accuracy")->capture_default_str();
    cmd->add_option("--samples", a->samples, "Monte-Carlo samples")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--ensemble", a->ensemble, "approx | uniform | exhaustive")->capture_default_str()
        ->check(CLI::IsMember({"approx", "uniform", "exhaustive"}));
    cmd->add_option("--vectors", a->vectors, "basis | haar")->capture_default_str()->check(CLI::IsMember({"basis", "haar"}));
    cmd->add_option("--alpha", a->alpha, "Basis bra (default all zeros)");
    cmd->add_option("--beta", a->beta, "Basis ket (default all zeros)");
    cmd->add_option("--depth-factor", a->depth, "Circuit length multiplier")->capture_default_str();
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &err) {
        SamplerConfig cfg{a->n, a->delta, a->depth, kEnsembles.at(a->ensemble)};
        cfg.validate();
        Seed128 seed = resolve_seed(g, err);
        MomentProbe probe;
        if (a->vectors == "basis") {
            probe = MomentProbe::basis(bits_or_zero(a->alpha, a->n, "--alpha"), bits_or_zero(a->beta, a->n, "--beta"));
        } else {
            Rng rng(seed, StreamDomain::kMeasurement, 0);
            probe = MomentProbe::random_haar(a->n, rng);
        }
        MomentEstimate est;
        if (cfg.mode == SamplerMode::kSingleQubitExhaustive) {
            std::vector<CliffordCircuit> all;
            for (uint64_t i = 0; i < kSingleQubitCliffordCount; i++) {
                all.push_back(clifford_from_index(1, i / 4, i % 4));
            }
            est = ensemble_moments(all, probe);
        } else {
            CircuitSampler sampler = [cfg](Rng &r) { return sample_design_circuit(cfg, r); };
            est = estimate_moments(sampler, probe, a->samples, seed, g.jobs);
        }
        double gamma = gamma_of(est);
        double bound = gamma_bound(a->delta);
        bool pass = check_design(est, a->delta).pass();
        std::vector<std::string> head{"ensemble", "d",       "samples", "mean2", "stderr2",
                                      "mean4",    "stderr4", "gamma",   "gamma_bound", "pass"};
        std::vector<std::string> row{a->ensemble,       std::to_string(est.dim), std::to_string(est.samples),
                                     num(est.mean2),    num(est.stderr2),        num(est.mean4),
                                     num(est.stderr4),  num(gamma),              num(bound),
                                     flag(pass)};
        if (g.csv) {
            body = csv_row(head) + csv_row(row);
        } else {
            for (size_t i = 0; i < head.size(); i++) {
                body += head[i] + ": " + row[i] + "\n";
            }
        }
    };
}

void add_gamma(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        double delta = 0.0;
        size_t n = 1;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("gamma", "Spread coefficient bound of a delta-approximate design");
    cmd->add_option("--delta", a->delta, "Design accuracy")->capture_default_str();
    cmd->add_option("--n", a->n, "Qubits for the Haar reference value")->capture_default_str()->check(CLI::Range(1, 60));
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &) {
        const uint64_t d = uint64_t{1} << a->n;
        Rational m1 = haar_moment(1, d);
        Rational haar = haar_moment(2, d) / (m1 * m1);
        std::vector<std::string> head{"delta", "gamma_bound", "d", "gamma_haar"};
        std::vector<std::string> row{num(a->delta), num(gamma_bound(a->delta)), std::to_string(d),
                                     num(haar.value())};
        if (g.csv) {
            body = csv_row(head) + csv_row(row);
        } else {
            for (size_t i = 0; i < head.size(); i++) {
                body += head[i] + ": " + row[i] + "\n";
            }
            body += "gamma_haar_exact: " + haar.str() + "\n";
        }
    };
}

SecurityParams bound_params(size_t n, double eps, double hmin, double log2_m, double gamma) {
    SecurityParams p;
    p.n = n;
    p.epsilon = eps;
    p.delta = 0;
    p.p_max = std::exp2(-hmin);
    p.M = std::exp2(log2_m);
    p.gamma = gamma;
    p.validate();
    return p;
}

void add_keylen(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        size_t n = 0;
        double eps = 1e-8;
        double hmin = -1;
        double hmin_frac = 1.0;
        double delta = 0.0;
        double gamma = 0;
        double log2_m = -1;
        double K = 0;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("keylen", "Key threshold, key length and tail bounds");
    cmd->add_option("--n", a->n, "Qubits")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--eps", a->eps, "Leakage parameter")->capture_default_str();
    auto *hmin = cmd->add_option("--hmin", a->hmin, "Min-entropy of the prior in bits");
    cmd->add_option("--hmin-frac", a->hmin_frac, "Min-entropy as a fraction of n")->capture_default_str()->excludes(hmin);
    cmd->add_option("--delta", a->delta, "Design accuracy used for the default gamma")->capture_default_str();
    cmd->add_option("--gamma", a->gamma, "Spread coefficient (default: design bound at --delta)");
    cmd->add_option("--log2-M", a->log2_m, "log2 of the number of code words (default n)");
    cmd->add_option("--K", a->K, "Key count at which to evaluate the tail bounds (default: threshold)");
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &) {
        const double nd = static_cast<double>(a->n);
        const double hmin = a->hmin >= 0 ? a->hmin : a->hmin_frac * nd;
        const double gamma = a->gamma > 0 ? a->gamma : gamma_bound(a->delta);
        SecurityParams p = bound_params(a->n, a->eps, hmin, a->log2_m >= 0 ? a->log2_m : nd, gamma);
        p.delta = a->delta;
        KeyThreshold t = key_threshold(p);
        KeyLength len = key_length_bits(p);
        ComparisonRows rows = comparison_rows(a->eps, a->n);
        const double K = a->K > 0 ? a->K : std::ceil(t.k_min());
        TailBound p1 = chernoff_p1(p, K);
        TailBound p2 = maurer_p2(p, K);
        std::vector<std::string> head{"n",         "epsilon",       "hmin",        "gamma",      "log2_chernoff",
                                      "log2_maurer", "binding",     "logK_exact",  "logK_asymptotic", "qotp",
                                      "approx_otp", "K",            "p1_exponent", "p1",         "p2_exponent",
                                      "p2",        "p_fail"};
        std::vector<std::string> row{std::to_string(a->n), num(a->eps),        num(hmin),
                                     num(gamma),           num(t.log2_chernoff), num(t.log2_maurer),
                                     branch_name(t.binding), num(len.exact),   num(len.asymptotic),
                                     num(rows.qotp),       num(rows.approx_otp), num(K),
                                     num(p1.exponent),     num(p1.bound),      num(p2.exponent),
                                     num(p2.bound),        num(std::min(1.0, p1.bound + p2.bound))};
        if (g.csv) {
            body = csv_row(head) + csv_row(row);
        } else {
            for (size_t i = 0; i < head.size(); i++) {
                body += head[i] + ": " + row[i] + "\n";
            }
        }
    };
}

void add_fig2(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        double eps = 1e-8;
        std::vector<double> fracs{1.0};
        std::string range = "10:130:10";
        double gamma = 0;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("fig2", "Key length versus n against the one-time pad baselines");
    cmd->add_option("--eps", a->eps, "Leakage parameter")->capture_default_str();
    cmd->add_option("--hmin-frac", a->fracs, "Min-entropy fractions, comma separated")->capture_default_str()->delimiter(',');
    cmd->add_option("--n", a->range, "Range start:stop:step (stop exclusive)")->capture_default_str();
    cmd->add_option("--gamma", a->gamma, "Spread coefficient (default: exact design bound 2)");
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &) {
        const double gamma = a->gamma > 0 ? a->gamma : gamma_bound(0.0);
        std::vector<long long> ns = parse_range(a->range).values();
        for (long long n : ns) {
            if (n < 1) {
                throw std::invalid_argument("n must be positive");
            }
        }
        for (double f : a->fracs) {
            if (!(f > 0 && f <= 1)) {
                throw std::invalid_argument("--hmin-frac values must lie in (0, 1]");
            }
        }
        std::vector<std::string> head{"n", "logK_exact", "logK_asymptotic", "qotp", "approx_otp", "hmin_frac",
                                      "epsilon"};
        if (g.csv) {
            body = csv_row(head);
        } else {
            char line[160];
            std::snprintf(line, sizeof(line), "%6s %14s %16s %8s %12s %10s %10s\n", "n", "logK_exact",
                          "logK_asymptotic", "qotp", "approx_otp", "hmin_frac", "epsilon");
            body = line;
        }
        for (double f : a->fracs) {
            for (long long n : ns) {
                const double nd = static_cast<double>(n);
                SecurityParams p = bound_params(static_cast<size_t>(n), a->eps, f * nd, nd, gamma);
                KeyLength len = key_length_bits(p);
                ComparisonRows rows = comparison_rows(a->eps, static_cast<size_t>(n));
                if (g.csv) {
                    body += csv_row({std::to_string(n), num(len.exact), num(len.asymptotic), num(rows.qotp),
                                     num(rows.approx_otp), num(f), num(a->eps)});
                } else {
                    char line[160];
                    std::snprintf(line, sizeof(line), "%6lld %14.6f %16.6f %8.0f %12.6f %10.3g %10.3g\n", n,
                                  len.exact, len.asymptotic, rows.qotp, rows.approx_otp, f, a->eps);
                    body += line;
                }
            }
        }
    };
}

void add_verify_chernoff(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        size_t n = 3;
        uint64_t K = 0;
        double eps = 0.1;
        size_t trials = 100;
        double delta = 0.01;
        std::string ensemble = "approx";
        uint64_t support = 0;
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("verify-chernoff", "Monte-Carlo check of rho_E <= (1 + eps) 2^-n I");
    cmd->add_option("--n", a->n, "Qubits")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--K", a->K, "Codebook size (default: Chernoff threshold)");
    cmd->add_option("--eps", a->eps, "Leakage parameter")->capture_default_str();
    cmd->add_option("--trials", a->trials, "Sampled codebooks")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--delta", a->delta, "Design accuracy")->capture_default_str();
    cmd->add_option("--ensemble", a->ensemble, "approx | uniform | exhaustive")->capture_default_str()
        ->check(CLI::IsMember({"approx", "uniform", "exhaustive"}));
    cmd->add_option("--support", a->support, "Uniform prior over the first m strings (default: all)");
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &err) {
        require_dense(a->n);
        PriorDistribution prior = make_prior(a->n, a->support);
        uint64_t K = a->K;
        if (K == 0) {
            SecurityParams p = SecurityParams::from_prior(prior, a->eps, a->delta, gamma_bound(a->delta));
            K = static_cast<uint64_t>(std::ceil(key_threshold(p).chernoff));
        }
        TrialSettings settings{SamplerConfig{a->n, a->delta, 1.0, kEnsembles.at(a->ensemble)}, resolve_seed(g, err),
                               a->trials, g.jobs};
        ChernoffReport r = empirical_chernoff(K, prior, a->eps, settings);
        double worst = *std::max_element(r.lambda_max.begin(), r.lambda_max.end());
        const double d = std::exp2(static_cast<double>(a->n));
        if (g.csv) {
            body = csv_row({"kind", "trial", "lambda_max", "empirical_epsilon", "violation", "frequency",
                            "p1_exponent", "p1"});
            for (size_t t = 0; t < a->trials; t++) {
                bool v = r.lambda_max[t] > (1.0 + a->eps) / d;
                body += csv_row({"trial", std::to_string(t), num(r.lambda_max[t]), num(r.empirical_epsilon[t]),
                                 flag(v), "", "", ""});
            }
            body += csv_row({"summary", std::to_string(a->trials), num(worst), num(worst * d - 1.0),
                             std::to_string(r.violations), num(r.frequency), num(r.p1.exponent), num(r.p1.bound)});
        } else {
            body = "n: " + std::to_string(a->n) + "\nK: " + std::to_string(K) + "\nepsilon: " + num(a->eps) +
                   "\ntrials: " + std::to_string(a->trials) + "\nmax_lambda: " + num(worst) +
                   "\nmax_empirical_epsilon: " + num(worst * d - 1.0) +
                   "\nviolations: " + std::to_string(r.violations) + "\nfrequency: " + num(r.frequency) +
                   "\np1_exponent: " + num(r.p1.exponent) + "\np1: " + num(r.p1.bound) + "\n";
        }
    };
}

void add_verify_maurer(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        size_t n = 1;
        uint64_t K = 50;
        double tau = 0.5;
        size_t trials = 10000;
        std::string x;
        std::string phi;
        double gamma = 0;
        double delta = 0.01;
        std::string ensemble = "uniform";
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("verify-maurer", "Monte-Carlo lower-tail frequency of <phi|rho_E^x|phi>");
    cmd->add_option("--n", a->n, "Qubits")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--K", a->K, "Circuits per trial")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--tau", a->tau, "Relative tail threshold")->capture_default_str();
    cmd->add_option("--trials", a->trials, "Trials")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--x", a->x, "Plaintext (default all zeros)");
    cmd->add_option("--phi", a->phi, "Basis vector probed (default all zeros)");
    cmd->add_option("--gamma", a->gamma, "Spread coefficient (default: Haar value 2d/(d+1))");
    cmd->add_option("--delta", a->delta, "Design accuracy for the approx ensemble")->capture_default_str();
    cmd->add_option("--ensemble", a->ensemble, "approx | uniform | exhaustive")->capture_default_str()
        ->check(CLI::IsMember({"approx", "uniform", "exhaustive"}));
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &err) {
        require_dense(a->n);
        BitString x = bits_or_zero(a->x, a->n, "--x");
        StateVector phi = StateVector::basis(bits_or_zero(a->phi, a->n, "--phi"));
        double gamma = a->gamma;
        if (gamma <= 0) {
            Rational m1 = haar_moment(1, uint64_t{1} << a->n);
            gamma = (haar_moment(2, uint64_t{1} << a->n) / (m1 * m1)).value();
        }
        TrialSettings settings{SamplerConfig{a->n, a->delta, 1.0, kEnsembles.at(a->ensemble)}, resolve_seed(g, err),
                               a->trials, g.jobs};
        MaurerReport r = empirical_maurer(a->K, x, phi, a->tau, gamma, settings);
        const double threshold = (1.0 - a->tau) * std::exp2(-static_cast<double>(a->n));
        if (g.csv) {
            body = csv_row({"kind", "trial", "value", "tail", "tail_count", "frequency", "bound", "sigma"});
            for (size_t t = 0; t < a->trials; t++) {
                body += csv_row({"trial", std::to_string(t), num(r.values[t]), flag(r.values[t] < threshold), "", "",
                                 "", ""});
            }
            body += csv_row({"summary", std::to_string(a->trials), num(threshold), "", std::to_string(r.tail_count),
                             num(r.frequency), num(r.bound), num(r.sigma)});
        } else {
            body = "n: " + std::to_string(a->n) + "\nK: " + std::to_string(a->K) + "\ntau: " + num(a->tau) +
                   "\ngamma: " + num(gamma) + "\ntrials: " + std::to_string(a->trials) +
                   "\nthreshold: " + num(threshold) + "\ntail_count: " + std::to_string(r.tail_count) +
                   "\nfrequency: " + num(r.frequency) + "\nbound: " + num(r.bound) + "\nsigma: " + num(r.sigma) +
                   "\nwithin_bound_3sigma: " + flag(r.frequency <= r.bound + 3 * r.sigma) + "\n";
        }
    };
}

void add_lock_probe(CLI::App &app, std::map<CLI::App *, Runner> &runners) {
    struct Args {
        size_t n = 4;
        uint64_t K = 16;
        double delta = 0.01;
        size_t measurements = 20;
        uint64_t support = 0;
        std::string ensemble = "approx";
    };
    auto a = std::make_shared<Args>();
    auto *cmd = app.add_subcommand("lock-probe", "Holevo quantity against measured information for a sampled codebook");
    cmd->add_option("--n", a->n, "Qubits")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--K", a->K, "Codebook size")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--delta", a->delta, "Design accuracy")->capture_default_str();
    cmd->add_option("--measurements", a->measurements, "Random bases besides the computational one")->capture_default_str();
    cmd->add_option("--support", a->support, "Uniform prior over the first m strings (default: all)");
    cmd->add_option("--ensemble", a->ensemble, "approx | uniform | exhaustive")->capture_default_str()
        ->check(CLI::IsMember({"approx", "uniform", "exhaustive"}));
    runners[cmd] = [a](const GlobalOptions &g, std::string &body, std::ostream &err) {
        require_dense(a->n);
        Seed128 seed = resolve_seed(g, err);
        Codebook cb =
            Codebook::build(SamplerConfig{a->n, a->delta, 1.0, kEnsembles.at(a->ensemble)}, a->K, seed, g.jobs);
        Rng rng(seed, StreamDomain::kMeasurement, 0);
        LockingReport r = locking_probe(cb, make_prior(a->n, a->support), measurement_suite(a->n, a->measurements, rng));
        std::vector<std::pair<std::string, double>> summary{
            {"holevo", r.holevo},          {"eve_entropy", r.eve_entropy}, {"max_measured", r.max_measured},
            {"gap", r.gap},                {"empirical_epsilon", r.empirical_epsilon},
            {"reference_2n_eps", r.reference}};
        if (g.csv) {
            body = csv_row({"kind", "name", "value"});
            for (const auto &[name, v] : r.measured) {
                body += csv_row({"measurement", name, num(v)});
            }
            for (const auto &[name, v] : summary) {
                body += csv_row({"summary", name, num(v)});
            }
        } else {
            body = "n: " + std::to_string(a->n) + "\nK: " + std::to_string(a->K) + "\n";
            for (const auto &[name, v] : summary) {
                body += name + ": " + num(v) + "\n";
            }
            for (const auto &[name, v] : r.measured) {
                body += "mi[" + name + "]: " + num(v) + "\n";
            }
        }
    };
}

}  // namespace

std::vector<long long> IntRange::values() const {
    std::vector<long long> out;
    for (long long v = start; v < stop; v += step) {
        out.push_back(v);
    }
    return out;
}

IntRange parse_range(const std::string &text) {
    std::vector<long long> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':')) {
        size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(piece, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (piece.empty() || used != piece.size()) {
            throw std::invalid_argument("bad range '" + text + "'");
        }
        parts.push_back(v);
    }
    if (!text.empty() && text.back() == ':') {
        throw std::invalid_argument("bad range '" + text + "'");
    }
    IntRange r;
    if (parts.size() == 1) {
        r = {parts[0], parts[0] + 1, 1};
    } else if (parts.size() == 2) {
        r = {parts[0], parts[1], 1};
    } else if (parts.size() == 3) {
        r = {parts[0], parts[1], parts[2]};
    } else {
        throw std::invalid_argument("bad range '" + text + "'");
    }
    if (r.step <= 0) {
        throw std::invalid_argument("range step must be positive");
    }
    if (r.stop <= r.start) {
        throw std::invalid_argument("range '" + text + "' is empty");
    }
    return r;
}

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app("Quantum data locking with Clifford circuits", "qlock");
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    app.add_flag("--csv", g.csv, "CSV output");
    app.add_option("--seed", g.seed, "Master seed, up to 32 hex digits");
    app.add_option("--out", g.out_path, "Write the output to this file");
    app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    std::map<CLI::App *, Runner> runners;
    add_keygen(app, runners);
    add_codebook(app, runners);
    add_encrypt(app, runners);
    add_decrypt(app, runners);
    add_moments(app, runners);
    add_gamma(app, runners);
    add_keylen(app, runners);
    add_fig2(app, runners);
    add_verify_chernoff(app, runners);
    add_verify_maurer(app, runners);
    add_lock_probe(app, runners);

    if (!args.empty() && !args[0].starts_with("-") &&
        std::none_of(runners.begin(), runners.end(), [&](const auto &r) { return r.first->get_name() == args[0]; })) {
        err << "error: unknown subcommand '" << args[0] << "'\n\n" << app.help();
        return kExitUsage;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n";
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    CLI::App *cmd = app.get_subcommands().front();
    std::string body;
    try {
        runners.at(cmd)(g, body, err);
        if (!g.out_path.empty()) {
            write_file(g.out_path, body);
        } else {
            out << body;
        }
    } catch (const std::domain_error &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::logic_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace qlock
