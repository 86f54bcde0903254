#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stacksp/stacksp.hpp"

using namespace stacksp;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("write to '" + path + "' failed");
}

// Writes to `path`, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_file(path, text);
}

Formula load_formula(const std::string& path) { return parse_dimacs(read_file(path)); }
PricingInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }
GadgetMap load_map(const std::string& path) { return parse_map(read_file(path)); }
PriceAssignment load_prices(const std::string& path) { return parse_pricing(read_file(path)); }

// "1,2,4,3" (1-based) to 0-based indices.
std::vector<std::size_t> parse_perm(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !detail::all_digits(item)) throw InputError("malformed --perm entry '" + item + "'");
        auto v = std::stoull(item);
        if (v == 0) throw InputError("--perm entries are 1-based");
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    return out;
}

std::string path_text(const PricingInstance& inst, const EdgePath& path) {
    std::string out;
    for (auto v : path_vertices(inst, path)) out += " " + std::to_string(v);
    return out;
}

// Shared generator flags.
struct GenFlags {
    unsigned ell = 1;
    std::string delta;
    std::string gamma = "1";
    std::string epsilon;
    std::string order = "identity";
    std::string perm;
    std::string shortcuts = "far";
    std::uint64_t seed = 1;
    std::size_t max_retries = 20;
    std::uint64_t max_vertices = 2'000'000;
    std::uint64_t max_edges = 20'000'000;

    void add(CLI::App* cmd, const std::string& order_default, const std::string& shortcut_default) {
        order = order_default;
        shortcuts = shortcut_default;
        cmd->add_option("--ell", ell, "parallel repetitions")->capture_default_str();
        cmd->add_option("--delta", delta, "far window fraction (default 1/M)");
        cmd->add_option("--gamma", gamma, "allowed non-far fraction for random orders")->capture_default_str();
        cmd->add_option("--epsilon", epsilon, "derive delta and gamma from epsilon");
        cmd->add_option("--order", order, "identity|random|derandomized|explicit")->capture_default_str();
        cmd->add_option("--perm", perm, "explicit order, comma-separated 1-based constraint ids");
        cmd->add_option("--shortcuts", shortcuts, "far|all")->capture_default_str();
        cmd->add_option("--seed", seed, "random order seed")->capture_default_str();
        cmd->add_option("--max-retries", max_retries, "random order attempts")->capture_default_str();
        cmd->add_option("--max-vertices", max_vertices, "vertex budget")->capture_default_str();
        cmd->add_option("--max-edges", max_edges, "edge budget")->capture_default_str();
    }

    GenParams params(std::size_t m) const {
        if (ell == 0) throw InputError("--ell must be positive");
        if (max_retries == 0 || max_vertices == 0 || max_edges == 0) throw InputError("budgets must be positive");
        GenParams p = epsilon.empty() ? GenParams{} : GenParams::from_epsilon(parse_rational(epsilon), ell);
        p.ell = ell;
        if (!delta.empty())
            p.delta = parse_rational(delta);
        else if (epsilon.empty())
            p.delta = Rational(1, static_cast<long>(m));
        if (epsilon.empty() || gamma != "1") p.gamma = parse_rational(gamma);
        p.shortcut_mode = parse_shortcut_mode(shortcuts);
        p.order_mode = parse_order_mode(order);
        if (p.order_mode == OrderMode::explicit_perm) {
            if (perm.empty()) throw InputError("--order explicit needs --perm");
            p.perm = parse_perm(perm);
        } else if (!perm.empty()) {
            throw InputError("--perm is only valid with --order explicit");
        }
        p.seed = seed;
        p.max_retries = max_retries;
        p.max_vertices = max_vertices;
        p.max_edges = max_edges;
        return p;
    }

    // Checks projected sizes before any constraint system is built.
    void check_projection(const Formula& f) const {
        auto sr = size_report(f.clauses().size(), ell, static_cast<unsigned>(f.width()));
        if (sr.total_vertices > max_vertices)
            throw BudgetError("projected M " + std::to_string(sr.constraints) + " total_vertices " +
                              std::to_string(sr.total_vertices) + " exceeds --max-vertices " +
                              std::to_string(max_vertices));
        auto edges = sr.constraints * sr.edges_per_gadget + sr.chain_edges;
        if (edges > max_edges)
            throw BudgetError("projected M " + std::to_string(sr.constraints) + " gadget_edges " +
                              std::to_string(edges) + " exceeds --max-edges " + std::to_string(max_edges));
    }
};

std::vector<bool> parse_truth(const std::string& text, std::size_t n) {
    std::vector<bool> out;
    for (char c : text) {
        if (c == '0' || c == '1')
            out.push_back(c == '1');
        else if (c != ',')
            throw InputError("--truth takes 0/1 digits, one per variable");
    }
    if (out.size() != n) throw InputError("--truth needs " + std::to_string(n) + " values");
    return out;
}

void print_checks(const PropertyReport& report) {
    for (const auto& c : report.checks) {
        const char* tag = c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL";
        std::cout << tag << " " << c.name;
        if (!c.detail.empty()) std::cout << " " << c.detail;
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stackelberg shortest-path pricing toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "build a pricing instance and gadget map from a CNF");
    std::string gen_cnf, gen_out, gen_map;
    GenFlags gen_flags;
    gen->add_option("--cnf", gen_cnf, "DIMACS formula")->required();
    gen_flags.add(gen, "identity", "far");
    gen->add_option("--out", gen_out, "instance file to write");
    gen->add_option("--map", gen_map, "gadget map file to write");

    // yes-price
    auto* yes = app.add_subcommand("yes-price", "pricing induced by a satisfying assignment");
    std::string yes_cnf, yes_map, yes_truth, yes_assignment, yes_out;
    unsigned yes_ell = 1;
    yes->add_option("--cnf", yes_cnf, "DIMACS formula")->required();
    yes->add_option("--ell", yes_ell, "parallel repetitions")->capture_default_str();
    yes->add_option("--map", yes_map, "gadget map")->required();
    auto* truth_opt = yes->add_option("--truth", yes_truth, "variable values as 0/1 digits");
    yes->add_option("--assignment", yes_assignment, "assignment file")->excludes(truth_opt);
    yes->add_option("--out", yes_out, "pricing file to write (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "client best response under a pricing");
    std::string eval_instance, eval_prices;
    bool eval_print_path = false;
    eval->add_option("--instance", eval_instance, "instance file")->required();
    eval->add_option("--prices", eval_prices, "pricing file")->required();
    eval->add_flag("--print-path", eval_print_path, "append the bought path's vertices");

    // solve-exact
    auto* solve = app.add_subcommand("solve-exact", "revenue-optimal pricing by path enumeration");
    std::string solve_instance, solve_out;
    std::uint64_t solve_max_paths = 1'000'000;
    solve->add_option("--instance", solve_instance, "instance file")->required();
    solve->add_option("--max-paths", solve_max_paths, "path enumeration budget")->capture_default_str();
    solve->add_option("--out", solve_out, "optimal pricing file to write");

    // two-approx
    auto* approx = app.add_subcommand("two-approx", "half pricing on a chain-with-shortcuts instance");
    std::string approx_cs, approx_instance, approx_map, approx_out;
    auto* cs_opt = approx->add_option("--cs", approx_cs, "CS instance file");
    auto* inst_opt = approx->add_option("--instance", approx_instance, "reduction instance file");
    approx->add_option("--map", approx_map, "gadget map for --instance");
    approx->add_option("--out", approx_out, "pricing file to write");
    cs_opt->excludes(inst_opt);

    // decompose
    auto* dec = app.add_subcommand("decompose", "split the bought path into R, S and T segments");
    std::string dec_instance, dec_map, dec_prices, dec_delta;
    bool dec_report = false;
    dec->add_option("--instance", dec_instance, "instance file")->required();
    dec->add_option("--map", dec_map, "gadget map")->required();
    dec->add_option("--prices", dec_prices, "pricing file")->required();
    dec->add_option("--delta", dec_delta, "window fraction for the cardinality check (default window/M)");
    dec->add_flag("--report", dec_report, "print one PASS/FAIL line per property");

    // decode
    auto* decode = app.add_subcommand("decode", "assignment read off the bought path's R segments");
    std::string decode_cnf, decode_instance, decode_map, decode_prices, decode_out;
    unsigned decode_ell = 1;
    decode->add_option("--cnf", decode_cnf, "DIMACS formula")->required();
    decode->add_option("--ell", decode_ell, "parallel repetitions")->capture_default_str();
    decode->add_option("--instance", decode_instance, "instance file")->required();
    decode->add_option("--map", decode_map, "gadget map")->required();
    decode->add_option("--prices", decode_prices, "pricing file")->required();
    decode->add_option("--out", decode_out, "assignment file to write");

    // farseq
    auto* farseq = app.add_subcommand("farseq", "constraint order and its far flags");
    std::string far_cnf;
    GenFlags far_flags;
    bool far_trace = false;
    farseq->add_option("--cnf", far_cnf, "DIMACS formula")->required();
    far_flags.add(farseq, "identity", "far");
    farseq->add_flag("--trace", far_trace, "print the estimator trace (derandomized order)");

    // size
    auto* size = app.add_subcommand("size", "construction sizes without building");
    std::uint64_t size_n = 0, size_clauses = 0;
    unsigned size_ell = 1, size_width = 3;
    auto* n_opt = size->add_option("--n", size_n, "variables of a regular 3SAT(5) formula");
    auto* m_opt = size->add_option("--clauses", size_clauses, "clause count");
    size->add_option("--ell", size_ell, "parallel repetitions")->capture_default_str();
    size->add_option("--width", size_width, "clause width")->capture_default_str();
    n_opt->excludes(m_opt);

    // verify
    auto* verify = app.add_subcommand("verify", "end-to-end checks on one formula");
    std::string verify_cnf;
    GenFlags verify_flags;
    std::uint64_t verify_max_paths = 2'000'000;
    std::size_t verify_pricings = 20;
    verify->add_option("--cnf", verify_cnf, "DIMACS formula")->required();
    verify_flags.add(verify, "derandomized", "far");
    verify->add_option("--max-paths", verify_max_paths, "path enumeration budget")->capture_default_str();
    verify->add_option("--pricings", verify_pricings, "random grid pricings in the battery")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            auto f = load_formula(gen_cnf);
            gen_flags.check_projection(f);
            ConstraintSystem cs(f, gen_flags.ell);
            auto params = gen_flags.params(cs.size());
            SequenceOrder order;
            auto red = generate(cs, params, &order);
            if (!gen_out.empty()) write_file(gen_out, serialize_instance(red.instance));
            if (!gen_map.empty()) write_file(gen_map, serialize_map(red.map));
            std::cout << "M " << cs.size() << " vertices " << red.instance.vertex_count() << " fixed_edges "
                      << red.instance.fixed_edges().size() << " variable_edges "
                      << red.instance.variable_edges().size() << " shortcuts " << red.map.shortcuts().size()
                      << " far_fraction " << to_string(far_fraction(cs, order)) << "\n";
        } else if (yes->parsed()) {
            ConstraintSystem cs(load_formula(yes_cnf), yes_ell);
            auto map = load_map(yes_map);
            if (map.size() != cs.size()) throw InputError("map gadget count does not match the constraint count");
            GlobalAssignment f;
            if (!yes_assignment.empty()) {
                std::istringstream in(read_file(yes_assignment));
                f = parse_assignment(cs, in);
            } else {
                std::vector<bool> truth;
                if (!yes_truth.empty()) {
                    truth = parse_truth(yes_truth, cs.formula().variable_count());
                } else {
                    auto found = find_satisfying_truth(cs.formula());
                    if (!found) throw InfeasibleError("formula is unsatisfiable");
                    truth = *found;
                }
                f = assignment_from_truth(cs, truth);
            }
            emit(yes_out, serialize_pricing(yes_pricing(cs, map, f)));
        } else if (eval->parsed()) {
            auto inst = load_instance(eval_instance);
            auto prices = load_prices(eval_prices).resolve(inst);
            auto w = best_response(inst, prices);
            std::cout << "cost " << to_string(w.cost) << " revenue " << to_string(w.revenue);
            if (eval_print_path) std::cout << " path" << path_text(inst, w.edges);
            std::cout << "\n";
        } else if (solve->parsed()) {
            if (solve_max_paths == 0) throw InputError("--max-paths must be positive");
            auto inst = load_instance(solve_instance);
            auto r = optimal_pricing(inst, solve_max_paths);
            if (r.status == LpStatus::unbounded) {
                std::cout << "status unbounded path" << path_text(inst, r.witness.edges) << "\n";
                return static_cast<int>(ErrorKind::infeasible);
            }
            std::cout << "status optimal revenue " << to_string(r.revenue) << " paths_examined " << r.paths_examined
                      << " paths_total " << r.paths_total << "\n";
            std::cout << "path" << path_text(inst, r.witness.edges) << "\n";
            if (!solve_out.empty()) write_file(solve_out, serialize_pricing(r.prices));
        } else if (approx->parsed()) {
            PricingInstance inst;
            PriceAssignment prices;
            Rational total;
            if (!approx_cs.empty()) {
                auto cs = parse_cs(read_file(approx_cs));
                inst = cs_to_pricing_instance(cs);
                prices = half_pricing(cs);
                total = cs.total_cost();
            } else if (!approx_instance.empty()) {
                if (approx_map.empty()) throw InputError("--instance needs --map");
                inst = load_instance(approx_instance);
                auto map = load_map(approx_map);
                auto cs = reduction_to_cs(inst, map);
                prices = half_pricing(map);
                total = cs.total_cost();
            } else {
                throw InputError("two-approx needs --cs or --instance with --map");
            }
            auto w = best_response(inst, prices.resolve(inst));
            std::cout << "revenue " << to_string(w.revenue) << " total_cost " << to_string(total) << "\n";
            if (!approx_out.empty()) write_file(approx_out, serialize_pricing(prices));
        } else if (dec->parsed()) {
            auto inst = load_instance(dec_instance);
            auto map = load_map(dec_map);
            auto prices = load_prices(dec_prices).resolve(inst);
            auto w = best_response(inst, prices);
            auto d = decompose(inst, map, prices, w.edges);
            for (const auto& s : d.segments)
                std::cout << "seg " << to_string(s.role) << " " << s.first + 1 << " " << s.last + 1 << " len "
                          << s.len() << " rev " << to_string(s.rev) << "\n";
            if (dec_report) {
                Rational delta = dec_delta.empty() ? Rational(static_cast<long>(map.window()),
                                                              static_cast<long>(map.size()))
                                                   : parse_rational(dec_delta);
                auto report = verify_properties(inst, map, d, delta, map.mode());
                print_checks(report);
                if (!report.ok()) return 1;
            }
        } else if (decode->parsed()) {
            ConstraintSystem cs(load_formula(decode_cnf), decode_ell);
            auto inst = load_instance(decode_instance);
            auto map = load_map(decode_map);
            if (map.size() != cs.size()) throw InputError("map gadget count does not match the constraint count");
            auto prices = load_prices(decode_prices).resolve(inst);
            auto w = best_response(inst, prices);
            auto d = decompose(inst, map, prices, w.edges);
            auto r = decode_assignment(cs, map, d.path, d.ranges(Role::R));
            std::cout << "constraints " << cs.size() << " far_edges " << r.far_edges << " satisfied " << r.satisfied
                      << " conflicts " << r.conflicts.size() << "\n";
            for (const auto& c : r.conflicts) std::cout << "conflict " << c << "\n";
            if (!decode_out.empty()) write_file(decode_out, serialize_assignment(cs, r.assignment));
        } else if (farseq->parsed()) {
            auto f = load_formula(far_cnf);
            ConstraintSystem cs(f, far_flags.ell);
            auto params = far_flags.params(cs.size());
            SequenceOrder order;
            std::vector<Rational> trace;
            switch (params.order_mode) {
            case OrderMode::identity: order = identity_order(cs, params.delta); break;
            case OrderMode::explicit_perm: order = make_order(params.perm, params.delta); break;
            case OrderMode::random:
                order = random_far_order(cs, params.delta, params.gamma, params.seed, params.max_retries).order;
                break;
            case OrderMode::derandomized: {
                auto r = derandomized_far_order(cs, params.delta);
                order = std::move(r.order);
                trace = std::move(r.trace);
                break;
            }
            }
            auto flags = delta_far_flags(cs, order);
            for (std::size_t k = 0; k < order.perm.size(); ++k)
                std::cout << "pos " << k + 1 << " constraint " << order.perm[k] + 1 << " far " << (flags[k] ? 1 : 0)
                          << "\n";
            std::cout << "fraction " << to_string(far_fraction(cs, order)) << "\n";
            if (far_trace) {
                if (trace.empty()) throw InputError("--trace needs --order derandomized");
                std::cout << "trace";
                for (const auto& t : trace) std::cout << " " << to_string(t);
                std::cout << "\n";
            }
        } else if (size->parsed()) {
            SizeReport r;
            if (size_n > 0) {
                if (size_width != 3) throw InputError("--n describes regular width-3 formulas");
                r = size_report_regular(size_n, size_ell);
            } else if (size_clauses > 0) {
                r = size_report(size_clauses, size_ell, size_width);
            } else {
                throw InputError("size needs --n or --clauses");
            }
            std::cout << "M " << r.constraints << " gadget_vertices " << r.vertices_per_gadget << " total_vertices "
                      << r.total_vertices << "\n";
            std::cout << "answers " << r.answers << " gadget_edges " << r.edges_per_gadget << " chain_edges "
                      << r.chain_edges << " shortcut_bound_per_pair " << r.shortcut_bound_per_pair << "\n";
        } else if (verify->parsed()) {
            auto f = load_formula(verify_cnf);
            verify_flags.check_projection(f);
            ConstraintSystem cs(f, verify_flags.ell);
            VerifyOptions opt;
            opt.params = verify_flags.params(cs.size());
            opt.delta = opt.params.delta;
            opt.max_paths = verify_max_paths;
            opt.random_pricings = verify_pricings;
            auto rep = verify_formula(f, opt);
            for (const auto& c : rep.checks)
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " " << c.detail << "\n";
            std::cout << "constraints " << rep.constraints << " satisfiable " << (rep.satisfiable ? "yes" : "no")
                      << "\n";
            if (rep.yes_revenue) std::cout << "yes_revenue " << to_string(*rep.yes_revenue) << "\n";
            std::cout << "optimal_revenue " << to_string(rep.optimal_revenue) << "\n";
            std::cout << "half_revenue " << to_string(rep.half_revenue) << "\n";
            auto ratio = rep.ratio();
            std::cout << "ratio " << (ratio ? to_string(*ratio) : std::string("undefined")) << "\n";
            if (!rep.ok()) return 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
