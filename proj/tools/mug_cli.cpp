// mug: command-line front end for the equivariant bordism calculator.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <mug/mug.hpp>

namespace
{

constexpr int exit_parse = 2;
constexpr int exit_domain = 3;
constexpr int exit_usage = 64;

const std::set<std::string> subcommands = {"normalize",    "eval-loc",     "complete",  "divisible",
                                           "restrict",     "fgl",          "classify-fp3", "check-fp2",
                                           "sphere-basis", "rigidity",     "check-relations"};

struct config {
    unsigned degree = mug::default_degree;
    std::string group = "S1";
    std::uint64_t seed = 1;
    bool quiet = false;
    bool verbose = false;

    mug::group_tag tag() const
    {
        if (group == "S1") return mug::group_tag::circle();
        if (group.size() > 1 && group[0] == 'Z' && group.find_first_not_of("0123456789", 1) == std::string::npos) {
            return mug::group_tag::cyclic(static_cast<unsigned>(std::stoul(group.substr(1))));
        }
        throw mug::invalid_argument("--group takes S1 or Z<d>, got '" + group + "'");
    }
    void require_circle(const std::string &what) const
    {
        if (!tag().is_circle()) throw mug::group_mismatch(what + " is defined over S1, not " + group);
    }
};

std::string read_fixed_point_argument(const std::string &arg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

mug::genus genus_by_name(const std::string &name, unsigned D)
{
    if (name == "todd") return mug::todd_genus(D);
    if (name == "augmentation") return mug::augmentation_genus(D);
    throw mug::undefined_genus("unknown genus '" + name + "' (known: todd, augmentation)");
}

std::string join_powers(const std::vector<unsigned> &v)
{
    std::string s;
    for (unsigned j : v) s += (s.empty() ? "" : ",") + std::to_string(j);
    return s.empty() ? "-" : s;
}

void print_usage(std::ostream &os, const CLI::App &app)
{
    os << app.help();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Calculator for circle-equivariant complex bordism", "mug"};
    app.require_subcommand(1);
    app.fallthrough();
    config cfg;
    app.add_option("--degree,-D", cfg.degree, "truncation degree D")->envname("MUG_DEGREE");
    app.add_option("--group", cfg.group, "S1 or Z<d>");
    app.add_option("--seed", cfg.seed, "seed for random suites");
    app.add_flag("--quiet,-q", cfg.quiet, "print only the headline");
    app.add_flag("--verbose,-v", cfg.verbose, "print extra diagnostics");

    std::string text, genus_name, fp_arg;
    long n = 0, m = 0;
    unsigned d = 0, k = 0;
    std::size_t count = 0;

    auto *normalize = app.add_subcommand("normalize", "normal form of an expression");
    normalize->add_option("expr", text)->required();
    auto *eval_loc = app.add_subcommand("eval-loc", "image in the localized Laurent ring");
    eval_loc->add_option("expr", text)->required();
    auto *complete = app.add_subcommand("complete", "image in MU_*[[x]]");
    complete->add_option("expr", text)->required();
    auto *divisible = app.add_subcommand("divisible", "is the expression divisible by e(n)");
    divisible->add_option("expr", text)->required();
    divisible->add_option("n", n)->required();
    auto *restrict_cmd = app.add_subcommand("restrict", "restriction to Z/d");
    restrict_cmd->add_option("expr", text)->required();
    restrict_cmd->add_option("d", d)->required();
    auto *fgl = app.add_subcommand("fgl", "formal group law series");
    auto *nseries = fgl->add_subcommand("nseries", "the n-series [n]_F x");
    nseries->add_option("n", n)->required();
    fgl->require_subcommand(1);
    auto *fp3 = app.add_subcommand("classify-fp3", "classify three isolated fixed points");
    fp3->add_option("data", fp_arg, "file or inline data like \"1,2; -1,1; -2,-1\"")->required();
    auto *fp2 = app.add_subcommand("check-fp2", "duality check for two fixed points");
    fp2->add_option("data", fp_arg)->required();
    auto *sphere = app.add_subcommand("sphere-basis", "coefficients of Q(x)^k modulo [n]_F x");
    sphere->add_option("m", m)->required();
    sphere->add_option("n", n)->required();
    sphere->add_option("k", k)->required();
    auto *rigidity = app.add_subcommand("rigidity", "rigidity of a genus on a geometric class");
    rigidity->add_option("genus", genus_name)->required();
    rigidity->add_option("expr", text)->required();
    auto *relations = app.add_subcommand("check-relations", "random relation suite");
    relations->add_option("count", count)->required();

    for (int a = 1; a < argc; ++a) {
        const std::string s = argv[a];
        if (s == "-h" || s == "--help") break;
        if (s.rfind("-", 0) == 0) {
            if (s.find('=') == std::string::npos && s != "-q" && s != "--quiet" && s != "-v" && s != "--verbose") ++a;
            continue;
        }
        if (!subcommands.count(s)) {
            std::cerr << "unknown subcommand '" << s << "'\n";
            print_usage(std::cerr, app);
            return exit_usage;
        }
        break;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::RequiredError &e) {
        if (app.get_subcommands().empty()) {
            print_usage(std::cerr, app);
            return exit_usage;
        }
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const CLI::ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    }

    const unsigned D = cfg.degree;
    std::ostream &out = std::cout;
    try {
        if (D == 0u) throw mug::invalid_degree("--degree must be at least 1");
        (void)cfg.tag();
        if (*normalize) {
            cfg.require_circle("normalize");
            mug::normalizer nz;
            const mug::normal_form nf = nz.normalize(mug::parse_expr(text, D));
            out << mug::to_string(nf) << "\n";
            if (cfg.verbose) out << "steps: " << nz.steps() << "\n";
        } else if (*eval_loc) {
            const mug::expr x = mug::parse_expr(text, D);
            const mug::group_tag g = cfg.tag();
            if (g.is_circle()) {
                out << mug::eval_loc(x).to_string() << "\n";
            } else {
                if (!mug::is_r0(x)) throw mug::group_mismatch("G/B evaluation is defined over S1, not " + cfg.group);
                out << mug::lambda_image(mug::restrict_r0(x, g.d, D), g).to_string() << "\n";
            }
        } else if (*complete) {
            cfg.require_circle("complete");
            out << mug::complete(mug::parse_expr(text, D), D).to_string() << "\n";
        } else if (*divisible) {
            cfg.require_circle("divisible");
            out << (mug::euler_divisibility(mug::parse_expr(text, D), n, D) ? "true" : "false") << "\n";
        } else if (*restrict_cmd) {
            cfg.require_circle("restrict");
            out << mug::to_text(mug::restrict_r0(mug::parse_expr(text, D), d, D)) << "\n";
        } else if (*nseries) {
            out << mug::n_series(n, D).to_string() << "\n";
        } else if (*fp3) {
            cfg.require_circle("classify-fp3");
            const auto v = mug::classify_three_fixed_points(mug::parse_fixed_point_data(read_fixed_point_argument(fp_arg)));
            out << (cfg.quiet ? v.headline() + "\n" : v.to_string());
        } else if (*fp2) {
            cfg.require_circle("check-fp2");
            out << (mug::check_two_fixed_points(mug::parse_fixed_point_data(read_fixed_point_argument(fp_arg)))
                        ? "true"
                        : "false")
                << "\n";
        } else if (*sphere) {
            const auto a = mug::sphere_basis_change(m, n, k, D);
            for (std::size_t j = 0; j < a.size(); ++j) out << (j ? " " : "") << a[j].to_string();
            out << "\n";
        } else if (*rigidity) {
            cfg.require_circle("rigidity");
            const auto r = mug::rigidity_check(genus_by_name(genus_name, D), mug::parse_expr(text, D), D);
            out << mug::to_string(r.verdict) << "\n";
            if (!cfg.quiet) {
                out << "value: " << r.value.to_string() << "\n";
                out << "verified powers: " << join_powers(r.verified) << "\n";
                out << "unknown powers: " << join_powers(r.unknown) << "\n";
                if (r.witness) out << "first nonconstant power: " << *r.witness << "\n";
            }
        } else if (*relations) {
            cfg.require_circle("check-relations");
            const auto rep = mug::check_relations(cfg.seed, count);
            out << "checked " << rep.checked << " rejected " << rep.rejected << " failures " << rep.failures.size()
                << "\n";
            for (const auto &f : rep.failures) {
                out << "relation " << f.relation << " seed " << f.seed;
                if (cfg.verbose) out << ": " << f.detail;
                out << "\n";
            }
            return rep.ok() ? 0 : 1;
        }
    } catch (const mug::parse_error &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const mug::error &e) {
        std::cerr << e.name() << " error: " << e.what() << "\n";
        return exit_domain;
    }
    return 0;
}
