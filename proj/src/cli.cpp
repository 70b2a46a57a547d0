#include "grm/cli.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "grm/analysis.hpp"

namespace grm {

const char* kToolVersion = "1.0.0";

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json doc_header(const std::string& command) {
    ordered_json j;
    j["tool"] = "grm";
    j["version"] = kToolVersion;
    j["command"] = command;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::vector<u8> parse_symbols(const std::string& text, u64 q) {
    std::vector<u8> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (tok.empty()) continue;
        long v = std::stol(tok);
        if (v < 0 || static_cast<u64>(v) >= q)
            throw std::invalid_argument("symbol out of range [0, q)");
        out.push_back(static_cast<u8>(v));
    }
    return out;
}

std::string symbols_to_string(std::span<const u8> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void maybe_write(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

Decomposition pick_decomposition(u64 q, unsigned m, u64 r1, u64 r2) {
    if (r1 != 0 || r2 != 0) {
        if (r1 == 0 || r2 == 0)
            throw std::invalid_argument("--r1 and --r2 must be given together");
        return make_decomposition(q, m, r1, r2);
    }
    auto decs = find_decompositions(q, m);
    if (decs.empty())
        throw std::invalid_argument("no suitable decomposition exists for these parameters");
    const Decomposition* best = nullptr;
    u64 best_s = 0;
    for (const auto& d : decs) {
        auto b = s_pd_bound(d, m);
        if (b && b->s > best_s) {
            best_s = b->s;
            best = &d;
        }
    }
    if (!best) throw std::invalid_argument("no decomposition admits an s-bound");
    return *best;
}

ordered_json decomposition_json(const Decomposition& d, unsigned m) {
    ordered_json j;
    j["r1"] = d.r1;
    j["r2"] = d.r2;
    j["a"] = d.a;
    if (auto b = s_pd_bound(d, m)) {
        j["lambda0"] = b->lambda0;
        j["s"] = b->s;
    } else {
        j["lambda0"] = nullptr;
        j["s"] = nullptr;
    }
    return j;
}

ordered_json matrix_json(const Mat& M) {
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < M.rows; ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < M.cols; ++c) row.push_back(M.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct TrialRecord {
    u64 trial = 0, seed = 0, weight = 0, perms = 0;
    bool success = false, exact = false, out_of_guarantee = false;
};

int cmd_trials(u64 q, unsigned m, u64 r1, u64 r2, u64 trials, u64 wmin, u64 wmax, u64 seed,
               unsigned jobs, const std::string& out_path, std::string& output) {
    GrmCode code = build_code(q, m, 1);
    Decomposition dec = pick_decomposition(q, m, r1, r2);
    PermDecoder decoder(std::move(code), dec);
    const GrmCode& C = decoder.code();

    std::vector<TrialRecord> records(trials);
    std::atomic<u64> next{0};
    auto worker = [&]() {
        while (true) {
            u64 i = next.fetch_add(1);
            if (i >= trials) break;
            TrialRecord rec;
            rec.trial = i;
            rec.seed = derive_seed(seed, i);
            u64 state = rec.seed;
            auto rnd = [&state](u64 bound) {
                state = splitmix64(state);
                return state % bound;
            };
            rec.weight = wmin + (wmax > wmin ? rnd(wmax - wmin + 1) : 0);
            rec.out_of_guarantee = rec.weight > decoder.s_eff();
            // random codeword
            std::vector<u8> msg(C.k);
            for (auto& x : msg) x = static_cast<u8>(rnd(q));
            CodeVector sent = vec_mat_mul(msg, C.gen, C.sub);
            // random error of the chosen weight
            CodeVector received = sent;
            std::vector<u32> support;
            while (support.size() < rec.weight) {
                u32 pos = static_cast<u32>(rnd(C.len));
                bool dup = false;
                for (u32 p : support) dup |= (p == pos);
                if (!dup) support.push_back(pos);
            }
            for (u32 pos : support)
                received[pos] = C.sub.add(received[pos], static_cast<u8>(1 + rnd(q - 1)));
            auto result = decoder.decode(received);
            rec.success = result.has_value();
            rec.perms = result ? result->stats.syndrome_checks : 0;
            rec.exact = result && result->codeword == sent;
            records[i] = rec;
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::ostringstream os;
    u64 exact = 0, out_of_guar = 0;
    std::map<u64, u64> histogram;
    for (const auto& rec : records) {
        ordered_json line;
        line["trial"] = rec.trial;
        line["seed"] = rec.seed;
        line["error_weight"] = rec.weight;
        line["perms_tried"] = rec.perms;
        line["success"] = rec.exact;
        line["out_of_guarantee"] = rec.out_of_guarantee;
        os << line.dump() << "\n";
        exact += rec.exact;
        out_of_guar += rec.out_of_guarantee;
        ++histogram[rec.perms];
    }
    ordered_json summary = doc_header("trials");
    summary["config"] = {{"q", q},       {"m", m},       {"r1", dec.r1}, {"r2", dec.r2},
                         {"trials", trials}, {"weight_min", wmin}, {"weight_max", wmax},
                         {"seed", seed}, {"jobs", jobs}, {"s_eff", decoder.s_eff()},
                         {"t", decoder.t()}, {"s", decoder.s_bound()}};
    summary["successes"] = exact;
    char rate[32];
    std::snprintf(rate, sizeof rate, "%.6f", trials ? static_cast<double>(exact) / trials : 0.0);
    summary["success_rate"] = rate;
    summary["out_of_guarantee_trials"] = out_of_guar;
    ordered_json hist;
    for (auto [perms, count] : histogram) hist[std::to_string(perms)] = count;
    summary["perm_histogram"] = std::move(hist);
    os << summary.dump() << "\n";
    output = os.str();
    maybe_write(out_path, output);
    return 0;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"first-order generalized Reed-Muller codes: construction, information sets, "
                 "permutation decoding, bounds and probability tables"};
    app.require_subcommand(1);

    u64 q = 0, r1 = 0, r2 = 0, s_opt = 0, trials = 0, seed = 0, mc_trials = 0;
    u64 weight = 0, wmin = 0, wmax = 0, cap = 10'000'000;
    unsigned m = 0, rho = 1, jobs = 1, digits = 10;
    unsigned m_min = 2, m_max = 10;
    bool exhaustive = false, with_matrices = false, prob_table = false;
    std::string msg_text, word_text, in_path, out_path, format = "markdown";
    std::vector<u64> q_list;

    auto add_qm = [&](CLI::App* c) {
        c->add_option("--q", q, "field size q (prime power)")->required();
        c->add_option("--m", m, "extension degree m")->required();
    };
    auto add_dec = [&](CLI::App* c) {
        c->add_option("--r1", r1, "decomposition factor r1");
        c->add_option("--r2", r2, "decomposition factor r2");
    };

    CLI::App* c_code = app.add_subcommand("code", "build a code and print its descriptor");
    add_qm(c_code);
    c_code->add_option("--rho", rho, "order (default 1)");
    c_code->add_flag("--matrices", with_matrices, "include generator/parity matrices");

    CLI::App* c_decomp = app.add_subcommand("decomp", "list oriented decompositions of q^m - 1");
    add_qm(c_decomp);

    CLI::App* c_infoset = app.add_subcommand("infoset", "build and verify the information set");
    add_qm(c_infoset);
    add_dec(c_infoset);

    CLI::App* c_encode = app.add_subcommand("encode", "systematic encoding w.r.t. the information set");
    add_qm(c_encode);
    add_dec(c_encode);
    c_encode->add_option("--msg", msg_text, "message symbols, whitespace separated")->required();
    c_encode->add_option("--out", out_path, "also write the codeword to a file");

    CLI::App* c_decode = app.add_subcommand("decode", "permutation decoding of one word");
    add_qm(c_decode);
    add_dec(c_decode);
    c_decode->add_option("--word", word_text, "received word, whitespace separated");
    c_decode->add_option("--in", in_path, "read the received word from a file");

    CLI::App* c_trials = app.add_subcommand("trials", "seeded noisy-channel decode experiments");
    add_qm(c_trials);
    add_dec(c_trials);
    c_trials->add_option("--trials", trials, "number of trials")->required();
    c_trials->add_option("--weight", weight, "fixed error weight");
    c_trials->add_option("--weight-min", wmin, "minimum error weight");
    c_trials->add_option("--weight-max", wmax, "maximum error weight");
    c_trials->add_option("--seed", seed, "master seed");
    c_trials->add_option("--jobs", jobs, "worker threads");
    c_trials->add_option("--out", out_path, "also write the transcript to a file");

    CLI::App* c_verify = app.add_subcommand("verify-pd", "check the s-PD-like property");
    add_qm(c_verify);
    add_dec(c_verify);
    c_verify->add_option("--s", s_opt, "number of moved positions")->required();
    c_verify->add_flag("--exhaustive", exhaustive, "iterate every s-subset");
    c_verify->add_option("--trials", trials, "sampled mode trial count");
    c_verify->add_option("--seed", seed, "sampled mode seed");
    c_verify->add_option("--jobs", jobs, "worker threads");
    c_verify->add_option("--cap", cap, "exhaustive subset cap");

    CLI::App* c_prob = app.add_subcommand("prob", "exact fiber-miss probability");
    add_qm(c_prob);
    add_dec(c_prob);
    c_prob->add_option("--s", s_opt, "subset size (default: the s-bound)");
    c_prob->add_option("--digits", digits, "decimal digits");
    c_prob->add_option("--mc-trials", mc_trials, "add a Monte-Carlo estimate");
    c_prob->add_option("--seed", seed, "Monte-Carlo seed");
    c_prob->add_option("--jobs", jobs, "worker threads");

    CLI::App* c_tables = app.add_subcommand("tables", "bounds tables / probability table");
    c_tables->add_option("--q", q_list, "field sizes (default 3 4 5)");
    c_tables->add_option("--m-min", m_min, "smallest m");
    c_tables->add_option("--m-max", m_max, "largest m");
    c_tables->add_option("--format", format, "markdown|csv|json");
    c_tables->add_flag("--probability", prob_table, "emit the fixed probability table");
    c_tables->add_option("--digits", digits, "decimal digits for probabilities");

    std::vector<const char*> argv;
    argv.push_back("grm");
    for (const auto& a : args) argv.push_back(a.c_str());

    CliResult res;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        res.output = app.help();
        res.exit_code = 0;
        return res;
    } catch (const CLI::ParseError& e) {
        res.output = std::string(e.what()) + "\n";
        res.exit_code = 1;
        return res;
    }

    try {
        if (c_code->parsed()) {
            GrmCode code = build_code(q, m, rho);
            ordered_json j = doc_header("code");
            j["config"] = {{"q", q}, {"m", m}, {"rho", rho}};
            j["n"] = code.n;
            j["k"] = code.k;
            j["d"] = code.d;
            j["d_verified"] = code.d_verified;
            j["t"] = code.t;
            j["construction"] = code.construction;
            j["field"] = {{"p", code.field->p},
                          {"deg", code.field->deg},
                          {"modulus", code.field->modulus},
                          {"prim", code.field->prim}};
            if (with_matrices) {
                j["gen_matrix"] = matrix_json(code.gen);
                if (code.par) j["par_matrix"] = matrix_json(*code.par);
            }
            res.output = dump(j);
        } else if (c_decomp->parsed()) {
            auto decs = find_decompositions(q, m);
            ordered_json j = doc_header("decomp");
            j["config"] = {{"q", q}, {"m", m}};
            j["n"] = ipow(q, m) - 1;
            ordered_json arr = ordered_json::array();
            for (const auto& d : decs) arr.push_back(decomposition_json(d, m));
            j["decompositions"] = std::move(arr);
            res.output = dump(j);
        } else if (c_infoset->parsed()) {
            GrmCode code = build_code(q, m, 1);
            Decomposition dec = pick_decomposition(q, m, r1, r2);
            InfoSet I = build_infoset(dec, m);
            bool ok = verify_infoset(code, I);
            ordered_json j = doc_header("infoset");
            j["config"] = {{"q", q}, {"m", m}, {"r1", dec.r1}, {"r2", dec.r2}, {"a", dec.a}};
            ordered_json gamma = ordered_json::array();
            for (auto [i1, i2] : I.gamma) gamma.push_back({i1, i2});
            j["gamma"] = std::move(gamma);
            j["exponents"] = I.exponents;
            j["positions"] = I.positions;
            j["verified"] = ok;
            res.output = dump(j);
            res.exit_code = ok ? 0 : 3;
        } else if (c_encode->parsed()) {
            GrmCode code = build_code(q, m, 1);
            Decomposition dec = pick_decomposition(q, m, r1, r2);
            InfoSet I = build_infoset(dec, m);
            std::vector<u8> msg = parse_symbols(msg_text, q);
            CodeVector cw = encode(code, msg, I.positions);
            ordered_json j = doc_header("encode");
            j["config"] = {{"q", q}, {"m", m}, {"r1", dec.r1}, {"r2", dec.r2}};
            j["message"] = symbols_to_string(msg);
            j["codeword"] = symbols_to_string(cw);
            res.output = dump(j);
            maybe_write(out_path, symbols_to_string(cw) + "\n");
        } else if (c_decode->parsed()) {
            GrmCode code = build_code(q, m, 1);
            Decomposition dec = pick_decomposition(q, m, r1, r2);
            PermDecoder decoder(std::move(code), dec);
            std::string text = in_path.empty() ? word_text : read_file(in_path);
            std::vector<u8> word = parse_symbols(text, q);
            auto result = decoder.decode(word);
            ordered_json j = doc_header("decode");
            j["config"] = {{"q", q}, {"m", m}, {"r1", dec.r1}, {"r2", dec.r2},
                           {"t", decoder.t()}, {"s_eff", decoder.s_eff()}};
            j["success"] = result.has_value();
            if (result) {
                j["codeword"] = symbols_to_string(result->codeword);
                j["perms_tried"] = result->stats.syndrome_checks;
                j["sigma_index"] = result->stats.sigma_index;
                j["shift_exponent"] = result->stats.shift_exponent;
            }
            res.output = dump(j);
            res.exit_code = result ? 0 : 3;
        } else if (c_trials->parsed()) {
            if (weight != 0 || (wmin == 0 && wmax == 0)) {
                wmin = weight;
                wmax = weight;
            }
            if (wmax < wmin) throw std::invalid_argument("--weight-max below --weight-min");
            res.exit_code =
                cmd_trials(q, m, r1, r2, trials, wmin, wmax, seed, jobs, out_path, res.output);
        } else if (c_verify->parsed()) {
            Decomposition dec = pick_decomposition(q, m, r1, r2);
            InfoSet I = build_infoset(dec, m);
            PdMode mode = exhaustive ? PdMode::exhaustive : PdMode::sampled;
            auto check = verify_pd_like(dec, I.exponents, s_opt, mode, trials, seed, jobs, cap);
            ordered_json j = doc_header("verify-pd");
            j["config"] = {{"q", q},   {"m", m},         {"r1", dec.r1},
                           {"r2", dec.r2}, {"s", s_opt}, {"mode", exhaustive ? "exhaustive" : "sampled"},
                           {"trials", trials}, {"seed", seed}, {"jobs", jobs}};
            j["result"] = check.ok ? "PASS" : "FAIL";
            j["subsets_tested"] = check.subsets_tested;
            if (!check.ok) j["counterexample"] = check.counterexample;
            res.output = dump(j);
            res.exit_code = check.ok ? 0 : 3;
        } else if (c_prob->parsed()) {
            Decomposition dec = pick_decomposition(q, m, r1, r2);
            u64 s = s_opt;
            if (s == 0) {
                auto b = s_pd_bound(dec, m);
                if (!b) throw std::invalid_argument("no s-bound; give --s explicitly");
                s = b->s;
            }
            ProbResult pr = prob_exact(dec.n, dec.r1, dec.r2, s, digits);
            ordered_json j = doc_header("prob");
            j["config"] = {{"q", q}, {"m", m}, {"r1", dec.r1}, {"r2", dec.r2},
                           {"s", s}, {"digits", digits}};
            j["n"] = pr.n;
            j["delta"] = pr.delta;
            j["p"] = pr.p_decimal;
            j["p_num"] = pr.p_num.to_decimal();
            j["p_den"] = pr.p_den.to_decimal();
            if (mc_trials > 0) {
                double est = prob_montecarlo(dec.n, dec.r1, dec.r2, s, mc_trials, seed, jobs);
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.6f", est);
                j["mc"] = {{"trials", mc_trials}, {"seed", seed}, {"estimate", buf}};
            }
            res.output = dump(j);
        } else if (c_tables->parsed()) {
            if (q_list.empty()) q_list = {3, 4, 5};
            TableFormat fmt = TableFormat::markdown;
            if (format == "csv")
                fmt = TableFormat::csv;
            else if (format == "json")
                fmt = TableFormat::json;
            else if (format != "markdown")
                throw std::invalid_argument("unknown --format");
            std::ostringstream os;
            std::ostringstream cfg;
            cfg << "tables";
            if (prob_table) cfg << " --probability";
            for (u64 qq : q_list) cfg << " --q " << qq;
            cfg << " --m-min " << m_min << " --m-max " << m_max << " --format " << format;
            if (fmt != TableFormat::json)
                os << (fmt == TableFormat::csv ? "# " : "") << "grm " << kToolVersion << ": "
                   << cfg.str() << "\n\n";
            if (prob_table) {
                auto rows = probability_table(digits);
                os << render_prob_table(rows, fmt) << "\n";
            } else {
                for (u64 qq : q_list) {
                    auto rows = bounds_table(qq, m_min, m_max);
                    os << render_bounds_table(qq, rows, fmt) << "\n";
                }
            }
            res.output = os.str();
        }
    } catch (const CapExceeded& e) {
        res.output = std::string("cap exceeded: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const std::exception& e) {
        res.output = std::string("error: ") + e.what() + "\n";
        res.exit_code = 1;
    }
    return res;
}

}  // namespace grm
