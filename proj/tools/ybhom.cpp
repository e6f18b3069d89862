// ybhom — exact Yang-Baxter homology of finite biquandles, as batch commands.

#include <CLI11.hpp>

#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ybhom/json_io.hpp"

using namespace ybhom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitBug = 70;

struct Options {
    std::string spec;
    std::string range = "1..4";
    std::string variant = "yb";
    std::string coeff = "z";
    std::string format = "plain";
    std::string subset;
    std::string export_dir = ".";
    std::string out_file;
    int threads = 0;
    i64 budget_entries = 50'000'000;
    i64 budget_bits = 1 << 16;
    i64 budget_wall_ms = 0;
    bool inject_fault = false;
};

int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

Budget budget_of(const Options& opt) {
    Budget b;
    b.max_entries = opt.budget_entries;
    b.max_bits = opt.budget_bits;
    b.wall_ms = opt.budget_wall_ms;
    return b;
}

std::pair<int, int> parse_range(const std::string& s) {
    auto bad = [&] { return InputError("bad degree range \"" + s + "\" (use N or A..B)"); };
    try {
        std::size_t dots = s.find("..");
        int lo, hi;
        if (dots == std::string::npos) {
            lo = hi = std::stoi(s);
        } else {
            lo = std::stoi(s.substr(0, dots));
            hi = std::stoi(s.substr(dots + 2));
        }
        if (lo < 1 || hi < lo || hi > 64) throw bad();
        return {lo, hi};
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw bad();
    }
}

std::vector<Variant> parse_variants(const std::string& s) {
    if (s == "all") return {Variant::yb, Variant::d, Variant::nyb};
    return {variant_from_string(s)};
}

std::vector<int> parse_subset(const std::string& s) {
    std::vector<int> ms;
    if (s.empty()) return ms;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.rfind("C_", 0) == 0) item = item.substr(2);
        try {
            ms.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InputError("bad table subset \"" + s + "\" (use e.g. C_3 or C_2,C_5)");
        }
    }
    return ms;
}

std::string group_csv(const AbelianGroup& g) {
    std::string out = "rank=" + std::to_string(g.free_rank);
    if (!g.torsion.empty()) {
        out += ";torsion=";
        for (std::size_t i = 0; i < g.torsion.size(); ++i)
            out += (i ? "|" : "") + g.torsion[i].str();
    }
    return out;
}

void require_degree_budget(int m, int hi, const Options& opt, int extra_degree) {
    // homology at degree n touches tuples of degree n + 1
    checked_pow(m, hi + extra_degree, opt.budget_entries);
}

//! Runs render(i) for every cell on a pool and prints results in index order
//! as soon as each prefix is complete.
void emit_ordered(i64 count, int threads, const std::function<std::string(i64)>& render,
                  std::ostream& out) {
    std::vector<std::optional<std::string>> slots(static_cast<std::size_t>(count));
    std::mutex mu;
    std::condition_variable cv;
    std::exception_ptr error;
    bool done = false;
    std::thread compute([&] {
        try {
            parallel_for(count, threads, [&](i64 i) {
                std::string text = render(i);
                {
                    std::lock_guard<std::mutex> lock(mu);
                    slots[static_cast<std::size_t>(i)] = std::move(text);
                }
                cv.notify_all();
            });
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            error = std::current_exception();
        }
        {
            std::lock_guard<std::mutex> lock(mu);
            done = true;
        }
        cv.notify_all();
    });
    i64 printed = 0;
    std::unique_lock<std::mutex> lock(mu);
    while (printed < count) {
        cv.wait(lock, [&] { return error || done || slots[static_cast<std::size_t>(printed)]; });
        while (printed < count && slots[static_cast<std::size_t>(printed)]) {
            out << *slots[static_cast<std::size_t>(printed)] << '\n';
            slots[static_cast<std::size_t>(printed)].reset();
            ++printed;
        }
        if (error || (done && printed < count && !slots[static_cast<std::size_t>(printed)])) break;
    }
    lock.unlock();
    compute.join();
    if (error) std::rethrow_exception(error);
}

int cmd_axioms(const Options& opt) {
    YBMap map = ybmap_from_spec(opt.spec);
    AxiomReport rep = inspect(map);
    auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
    if (opt.format == "json") {
        OrderedJson j;
        j["spec"] = opt.spec;
        j["m"] = map.m;
        j["yang_baxter"] = rep.ybe;
        j["r_bijective"] = rep.r_bijective;
        j["left_invertible"] = rep.left_invertible;
        j["right_invertible"] = rep.right_invertible;
        j["diagonal"] = rep.diagonal;
        j["property_i"] = rep.property_i;
        j["biquandle"] = rep.is_biquandle();
        if (!rep.first_failure.empty()) j["first_failure"] = rep.first_failure;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "spec:             " << opt.spec << " (m=" << map.m << ")\n"
                  << "yang-baxter:      " << verdict(rep.ybe) << '\n'
                  << "R bijective:      " << verdict(rep.r_bijective) << '\n'
                  << "left-invertible:  " << verdict(rep.left_invertible) << '\n'
                  << "right-invertible: " << verdict(rep.right_invertible) << '\n'
                  << "diagonal:         " << verdict(rep.diagonal) << '\n'
                  << "property (I):     " << (rep.property_i ? "holds" : "fails") << '\n'
                  << "biquandle:        " << (rep.is_biquandle() ? "yes" : "no") << '\n';
        if (!rep.first_failure.empty()) std::cout << "first failure:    " << rep.first_failure << '\n';
    }
    return rep.is_biquandle() ? kExitOk : kExitMismatch;
}

int cmd_presentation(const Options& opt) {
    YBMap map = ybmap_from_spec(opt.spec);
    Biquandle b = require_biquandle(map);
    Presentation p = structure_group_presentation(b);
    AbelianGroup g = abelianization(p);
    if (opt.format == "json") {
        std::cout << to_json(p, g).dump() << '\n';
        return kExitOk;
    }
    std::cout << "structure group of " << opt.spec << ": " << p.generator_count
              << " generators, " << p.relations.size() << " relations (" << p.trivial_count()
              << " trivial)\n";
    for (const auto& rel : p.relations) {
        if (rel.trivial) continue;
        auto word = [](const std::vector<int>& w) {
            std::string s;
            for (std::size_t i = 0; i < w.size(); ++i)
                s += (i ? " x" : "x") + std::to_string(w[i]);
            return s;
        };
        std::cout << "  " << word(rel.lhs) << " = " << word(rel.rhs) << '\n';
    }
    std::cout << "abelianization: " << g.to_string() << '\n';
    return kExitOk;
}

int cmd_homology(const Options& opt) {
    YBMap map = ybmap_from_spec(opt.spec);
    auto [lo, hi] = parse_range(opt.range);
    std::vector<Variant> variants = parse_variants(opt.variant);
    Coefficients coeff = Coefficients::parse(opt.coeff);
    require_degree_budget(map.m, hi, opt, 1);

    struct Cell {
        int n;
        Variant v;
    };
    std::vector<Cell> cells;
    for (int n = lo; n <= hi; ++n)
        for (Variant v : variants) cells.push_back({n, v});

    Engine eng(budget_of(opt));
    if (opt.format == "csv") std::cout << "m,n,variant,coeff,group,elapsed_ms\n";
    emit_ordered(
        static_cast<i64>(cells.size()), effective_threads(opt.threads),
        [&](i64 i) {
            const Cell& cell = cells[static_cast<std::size_t>(i)];
            HomologyReport rep = eng.homology(map, cell.n, cell.v, coeff);
            if (opt.format == "json") return to_json(rep).dump();
            if (opt.format == "csv") {
                std::ostringstream line;
                line << rep.m << ',' << rep.n << ',' << to_string(rep.variant) << ','
                     << rep.coeff.to_string() << ',' << group_csv(rep.group) << ','
                     << rep.elapsed_ms;
                return line.str();
            }
            std::ostringstream line;
            line << "H_" << rep.n << "^" << to_string(rep.variant) << "(" << opt.spec << "; "
                 << rep.coeff.to_string() << ") = " << rep.group.to_string();
            return line.str();
        },
        std::cout);
    return kExitOk;
}

int cmd_table(const Options& opt) {
    std::vector<int> subset = parse_subset(opt.subset);
    Engine eng(budget_of(opt));
    std::optional<testing::FaceFaultGuard> fault;
    if (opt.inject_fault) fault.emplace();
    TableRun run = run_reference_table(eng, subset, effective_threads(opt.threads));

    if (opt.format == "json") {
        OrderedJson rows = OrderedJson::array();
        for (const auto& row : run.rows) {
            OrderedJson j;
            j["m"] = row.cell.m;
            j["n"] = row.cell.n;
            j["variant"] = to_string(row.cell.variant);
            j["expected"] = row.cell.expected.to_string();
            j["got"] = row.error.empty() ? row.got.to_string() : "error: " + row.error;
            j["match"] = row.match;
            rows.push_back(std::move(j));
        }
        OrderedJson j;
        j["rows"] = std::move(rows);
        j["matches"] = run.matches;
        j["total"] = run.rows.size();
        std::cout << j.dump(2) << '\n';
    } else if (opt.format == "csv") {
        std::cout << "m,n,variant,expected,got,match\n";
        for (const auto& row : run.rows)
            std::cout << row.cell.m << ',' << row.cell.n << ',' << to_string(row.cell.variant)
                      << ',' << row.cell.expected.to_string() << ',' << row.got.to_string() << ','
                      << (row.match ? "yes" : "NO") << '\n';
        std::cout << run.matches << '/' << run.rows.size() << " match\n";
    } else {
        // one grid row per (m, variant), degrees across
        std::vector<int> ms;
        for (const auto& row : run.rows)
            if (ms.empty() || ms.back() != row.cell.m) ms.push_back(row.cell.m);
        std::cout << "integral homology of cyclic biquandles\n";
        std::cout << "group      ";
        for (int n = 1; n <= 5; ++n) {
            std::ostringstream head;
            head << "n=" << n;
            std::cout << head.str() << std::string(12 - head.str().size(), ' ');
        }
        std::cout << '\n';
        for (int m : ms) {
            for (Variant v : {Variant::yb, Variant::d, Variant::nyb}) {
                std::ostringstream name;
                name << to_string(v) << "(C_" << m << ")";
                std::cout << name.str() << std::string(11 - name.str().size(), ' ');
                for (const auto& row : run.rows) {
                    if (row.cell.m != m || row.cell.variant != v) continue;
                    std::string cell = row.got.to_string() + (row.match ? "" : "!");
                    std::cout << cell
                              << (cell.size() < 12 ? std::string(12 - cell.size(), ' ') : " ");
                }
                std::cout << '\n';
            }
        }
        for (const auto& row : run.rows)
            if (!row.match)
                std::cout << "MISMATCH m=" << row.cell.m << " n=" << row.cell.n << " "
                          << to_string(row.cell.variant) << ": expected "
                          << row.cell.expected.to_string() << ", got "
                          << (row.error.empty() ? row.got.to_string() : "error: " + row.error)
                          << '\n';
        std::cout << run.matches << '/' << run.rows.size() << " entries match\n";
    }
    return run.all_match() ? kExitOk : kExitMismatch;
}

int print_check_results(const std::vector<CheckResult>& results, const std::string& format) {
    bool all = true;
    if (format == "csv") std::cout << "check,m,n,variant,pass,expected,got\n";
    for (const CheckResult& r : results) {
        all = all && r.pass;
        if (format == "json") {
            std::cout << to_json(r).dump() << '\n';
        } else if (format == "csv") {
            std::cout << r.check << ',' << r.m << ',' << r.n << ','
                      << (r.variant ? to_string(*r.variant) : "") << ','
                      << (r.pass ? "yes" : "NO") << ",\"" << r.expected << "\",\"" << r.got
                      << "\"\n";
        } else {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " m=" << r.m;
            if (r.n > 0) std::cout << " n=" << r.n;
            std::cout << ": " << r.got;
            if (!r.pass) std::cout << " (expected " << r.expected << ")";
            std::cout << '\n';
        }
    }
    return all ? kExitOk : kExitMismatch;
}

int cmd_verify(const std::string& which, const Options& opt) {
    YBMap map = ybmap_from_spec(opt.spec);
    auto [lo, hi] = parse_range(opt.range);
    require_degree_budget(map.m, hi, opt, 1);
    Engine eng(budget_of(opt));

    if (which == "property-i") {
        bool holds = check_property_i(map);
        CheckResult r;
        r.check = "property-i";
        r.m = map.m;
        r.n = 0;
        r.pass = holds;
        r.expected = "the action property holds at every degree";
        r.got = holds ? "holds" : "fails";
        return print_check_results({r}, opt.format);
    }
    if (which == "equivariance") {
        std::vector<CheckResult> results;
        for (int n = lo; n <= hi; ++n) results.push_back(verify_equivariance(eng, map, n));
        return print_check_results(results, opt.format);
    }

    // the remaining checks are statements about cyclic biquandles
    if (!(map == make_cyclic(map.m).map()))
        throw InputError("verify " + which + " is defined for cyclic biquandles only");
    std::vector<CheckResult> results;
    for (int n = lo; n <= hi; ++n) {
        if (which == "betti")
            results.push_back(verify_betti(eng, map.m, n));
        else if (which == "torsion")
            results.push_back(verify_torsion_bound(eng, map.m, n));
        else if (which == "conjecture")
            results.push_back(verify_conjecture(eng, map.m, n));
        else if (which == "splitting")
            results.push_back(verify_splitting(eng, map.m, n));
        else if (which == "cocycles")
            results.push_back(verify_cocycle_basis(eng, map.m, n));
        else
            throw InputError("unknown verifier \"" + which + "\"");
    }
    return print_check_results(results, opt.format);
}

int cmd_export(const Options& opt) {
    YBMap map = ybmap_from_spec(opt.spec);
    auto [lo, hi] = parse_range(opt.range);
    std::vector<Variant> variants = parse_variants(opt.variant);
    checked_pow(map.m, hi, opt.budget_entries);  // refuse oversized bases up front

    std::string slug = opt.spec;
    for (char& c : slug)
        if (c == ':' || c == '/' || c == '\\' || c == '.') c = '-';
    Engine eng(budget_of(opt));
    std::filesystem::create_directories(opt.export_dir);
    for (int n = lo; n <= hi; ++n)
        for (Variant v : variants) {
            auto matrix = eng.boundary(map, n, v);
            std::filesystem::path path = std::filesystem::path(opt.export_dir) /
                                         ("boundary_" + slug + "_n" + std::to_string(n) + "_" +
                                          to_string(v) + ".sms");
            std::ofstream out(path);
            if (!out) throw InputError("cannot write " + path.string());
            write_sms(*matrix, out);
            std::cout << path.string() << '\n';
        }
    return kExitOk;
}

int cmd_cocycles(int m, int n, const Options& opt) {
    if (m < 1 || n < 1) throw InputError("cocycles needs m >= 1 and n >= 1");
    checked_pow(m, n, opt.budget_entries);
    std::vector<Cochain> basis = cocycle_basis(m, n);
    TupleCodec reps(m, n - 1);
    OrderedJson out = OrderedJson::array();
    for (i64 i = 0; i < static_cast<i64>(basis.size()); ++i) {
        std::vector<Element> rep(static_cast<std::size_t>(n), 0);
        if (n > 1) reps.decode(i, std::span<Element>(rep.data(), static_cast<std::size_t>(n - 1)));
        OrderedJson j;
        j["index"] = i;
        j["representative"] = rep;
        j["cocycle"] = to_json(basis[static_cast<std::size_t>(i)]);
        out.push_back(std::move(j));
    }
    if (opt.out_file.empty()) {
        std::cout << out.dump(2) << '\n';
    } else {
        std::ofstream f(opt.out_file);
        if (!f) throw InputError("cannot write " + opt.out_file);
        f << out.dump(2) << '\n';
        std::cout << "wrote " << basis.size() << " cocycles to " << opt.out_file << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact set-theoretic Yang-Baxter homology of finite biquandles"};
    app.require_subcommand(1);

    Options opt;
    int arg_m = 0, arg_n = 0;
    std::string verify_which;

    auto add_common = [&opt](CLI::App* cmd, bool with_range = true) {
        cmd->add_option("--format", opt.format, "output format: json, csv or plain")
            ->envname("YBHOM_FORMAT");
        cmd->add_option("--threads", opt.threads, "worker threads (0 = auto)")
            ->envname("YBHOM_THREADS");
        cmd->add_option("--budget-entries", opt.budget_entries, "max stored matrix entries")
            ->envname("YBHOM_BUDGET_ENTRIES");
        cmd->add_option("--budget-bits", opt.budget_bits, "max entry magnitude in bits")
            ->envname("YBHOM_BUDGET_BITS");
        cmd->add_option("--budget-wall-ms", opt.budget_wall_ms,
                        "per-matrix elimination ceiling in ms (0 = off)")
            ->envname("YBHOM_BUDGET_WALL_MS");
        if (with_range)
            cmd->add_option("--n", opt.range, "degree or degree range A..B")->envname("YBHOM_N");
    };

    CLI::App* axioms = app.add_subcommand("axioms", "check every biquandle axiom of a spec");
    axioms->add_option("spec", opt.spec, "cyclic:<m>, alexander:<m>:<s>:<t> or a JSON file")
        ->required();
    add_common(axioms, false);

    CLI::App* presentation =
        app.add_subcommand("presentation", "emit the structure group presentation");
    presentation->add_option("spec", opt.spec)->required();
    add_common(presentation, false);

    CLI::App* homology = app.add_subcommand("homology", "compute (co)homology groups per degree");
    homology->add_option("spec", opt.spec)->required();
    homology->add_option("--variant", opt.variant, "yb, d, nyb or all");
    homology->add_option("--coeff", opt.coeff, "z, q or zp:<p>");
    add_common(homology);

    CLI::App* table =
        app.add_subcommand("table", "recompute the cyclic reference table and diff it");
    table->add_option("--subset", opt.subset, "restrict to listed orders, e.g. C_3 or C_2,C_4");
    table->add_flag("--inject-fault", opt.inject_fault)->group("");  // test hook, hidden
    add_common(table, false);

    CLI::App* verify = app.add_subcommand(
        "verify", "run a verifier: betti, torsion, conjecture, splitting, cocycles, equivariance, property-i");
    verify->add_option("which", verify_which)->required();
    verify->add_option("spec", opt.spec)->required();
    add_common(verify);

    CLI::App* exp = app.add_subcommand("export", "write boundary matrices in SMS format");
    exp->add_option("spec", opt.spec)->required();
    exp->add_option("--variant", opt.variant, "yb, d, nyb or all");
    exp->add_option("--export", opt.export_dir, "destination directory")->envname("YBHOM_EXPORT");
    add_common(exp);

    CLI::App* cocycles = app.add_subcommand("cocycles", "dump the orbit cocycle basis");
    cocycles->add_option("m", arg_m)->required();
    cocycles->add_option("n", arg_n)->required();
    cocycles->add_option("--out", opt.out_file, "output file (default stdout)");
    add_common(cocycles, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (axioms->parsed()) return cmd_axioms(opt);
        if (presentation->parsed()) return cmd_presentation(opt);
        if (homology->parsed()) return cmd_homology(opt);
        if (table->parsed()) return cmd_table(opt);
        if (verify->parsed()) return cmd_verify(verify_which, opt);
        if (exp->parsed()) return cmd_export(opt);
        if (cocycles->parsed()) return cmd_cocycles(arg_m, arg_n, opt);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitBug;
    }
    return kExitInput;
}
