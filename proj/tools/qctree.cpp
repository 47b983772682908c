// qctree: command-line front end for the qctree library.
//
// Exit codes: 0 success, 1 domain or I/O error, 2 usage error.

#include "qctree/qctree.hpp"

#include "CLI11.hpp"

#include <iomanip>
#include <iostream>

namespace {

using namespace qctree;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Weight load_weight(const std::string& path, std::size_t m)
{
    if (path.empty()) return Weight::uniform(m);
    return weight_from_json(load_json_file(path));
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
    if (!f) throw std::runtime_error("failed writing '" + out + "'");
}

void emit(const Json& j, const std::string& out) { emit(j.dump(2), out); }

std::string format_double(double v, int digits = 15)
{
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

IFS model_ifs(const std::string& model, std::size_t m)
{
    return model == "vicsek" ? vicsek_ifs() : csst_like_ifs(m);
}

std::vector<Segment> model_generators(const std::string& model)
{
    return model == "vicsek" ? vicsek_generators() : unit_segment();
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Geometry of the universal quasiconformal trees T^{m,a}"};
    app.require_subcommand(1);

    std::string weights_path, out, x_text, y_text, from_text, to_text, word_text;
    std::string model = "csst-like", in_path, vertices_path, delta_text = "1/4", c_text = "1/2";
    std::size_t m = 3, level = 0, depth = 0, samples = 200, step = 0, levels = 1;
    std::size_t from_depth = 0, to_depth = 1;
    double tol = 1e-12, s_value = 0.0;
    bool infinite = false;
    std::string sep_text, growth_text, density_text;

    auto* dist = app.add_subcommand("dist", "exact distance between two points");
    dist->add_option("--weights", weights_path, "weight JSON (default: uniform 1/2 on --m letters)");
    dist->add_option("--m", m, "alphabet size when no weight file is given")->check(CLI::Range(2, 1000000));
    dist->add_option("--x", x_text, "first point code, e.g. \"1,(2)\"")->required();
    dist->add_option("--y", y_text, "second point code")->required();
    dist->add_option("--level", level, "also print the chain length at this level");

    auto* graph = app.add_subcommand("graph", "combinatorial graphs G_k");
    graph->require_subcommand(1);
    auto* graph_arc = graph->add_subcommand("arc", "unique arc between two words, one word per line");
    graph_arc->add_option("--m", m, "alphabet size")->check(CLI::Range(2, 1000000));
    graph_arc->add_option("--from", from_text, "start word, e.g. 1,1,1")->required();
    graph_arc->add_option("--to", to_text, "end word")->required();
    auto* graph_nb = graph->add_subcommand("neighbors", "neighbors of a word, one per line");
    graph_nb->add_option("--m", m, "alphabet size")->check(CLI::Range(2, 1000000));
    graph_nb->add_option("--word", word_text, "word, e.g. 1,2")->required();
    auto* graph_verify = graph->add_subcommand("verify", "check that G_k is a tree");
    graph_verify->add_option("--m", m, "alphabet size")->check(CLI::Range(2, 1000000));
    graph_verify->add_option("--level", level, "level k")->required();

    auto* branches_cmd = app.add_subcommand("branches", "branch points up to a level");
    branches_cmd->add_option("--weights", weights_path, "weight JSON");
    branches_cmd->add_option("--m", m, "alphabet size when no weight file is given")->check(CLI::Range(3, 1000000));
    branches_cmd->add_option("--level", level, "maximal stem length")->required();
    branches_cmd->add_option("--out", out, "output path");

    auto* tiles_cmd = app.add_subcommand("tiles", "tiles with diameters, boundaries and neighbors");
    tiles_cmd->add_option("--weights", weights_path, "weight JSON");
    tiles_cmd->add_option("--m", m, "alphabet size when no weight file is given")->check(CLI::Range(2, 1000000));
    auto* tiles_word = tiles_cmd->add_option("--word", word_text, "a single tile word");
    auto* tiles_level = tiles_cmd->add_option("--level", level, "all tiles of this level");
    tiles_word->excludes(tiles_level);
    tiles_cmd->add_option("--out", out, "output path");

    auto* dim = app.add_subcommand("dim", "Moran exponent or infinite-alphabet dimension certificate");
    dim->add_option("--weights", weights_path, "weight JSON");
    dim->add_option("--m", m, "alphabet size when no weight file is given")->check(CLI::Range(2, 1000000));
    dim->add_option("--tol", tol, "residual tolerance");
    dim->add_flag("--infinite", infinite, "certify sum_j a(j)^s < 1 over the whole alphabet");
    dim->add_option("--s", s_value, "exponent for --infinite");

    auto* render = app.add_subcommand("render", "write a skeleton as SVG or CSV (by extension)");
    render->add_option("--model", model, "csst-like or vicsek")->check(CLI::IsMember({"csst-like", "vicsek"}));
    render->add_option("--m", m, "alphabet size for csst-like")->check(CLI::Range(3, 1000));
    render->add_option("--depth", depth, "skeleton depth")->required();
    render->add_option("--out", out, "output path ending in .svg or .csv")->required();

    auto* glue = app.add_subcommand("glue", "apply a gluing step to a tree");
    glue->add_option("--in", in_path, "tree JSON")->required();
    glue->add_option("--step", step, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    glue->add_option("--m", m, "target valence")->check(CLI::Range(3, 1000));
    glue->add_option("--weights", weights_path, "weight JSON for step 3");
    glue->add_option("--delta", delta_text, "step 3 scale base delta in (0, 1/3)");
    glue->add_option("--c", c_text, "step 3 scale constant c");
    glue->add_option("--depth", depth, "step 3 truncation depth (default 2)");
    glue->add_option("--vertices", vertices_path, "step 3 vertex levels JSON");
    glue->add_option("--levels", levels, "step 3 without --vertices: spaced stand-in levels 1..n");
    glue->add_option("--out", out, "output path");

    auto* verify = app.add_subcommand("verify", "separation and uniform branching report");
    verify->add_option("--weights", weights_path, "weight JSON");
    verify->add_option("--m", m, "alphabet size when no weight file is given")->check(CLI::Range(3, 1000000));
    verify->add_option("--level", level, "maximal stem length")->required();
    verify->add_option("--samples", samples, "sampled pairs for density");
    verify->add_option("--out", out, "output path");

    auto* verify_tree = app.add_subcommand("verify-tree", "branching report for a finite tree");
    verify_tree->add_option("--in", in_path, "tree JSON")->required();
    verify_tree->add_option("--separation", sep_text, "separation bound p/q");
    verify_tree->add_option("--growth", growth_text, "growth bound p/q");
    verify_tree->add_option("--density", density_text, "density bound p/q");
    verify_tree->add_option("--out", out, "output path");

    auto* hausdorff = app.add_subcommand("hausdorff", "sampled Hausdorff distance between two skeleton depths");
    hausdorff->add_option("--model", model, "csst-like or vicsek")->check(CLI::IsMember({"csst-like", "vicsek"}));
    hausdorff->add_option("--m", m, "alphabet size for csst-like")->check(CLI::Range(3, 1000));
    hausdorff->add_option("--from", from_depth, "first depth")->required();
    hausdorff->add_option("--to", to_depth, "second depth")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*dist) {
            const Weight a = load_weight(weights_path, m);
            const PointCode x = parse_point_code(x_text);
            const PointCode y = parse_point_code(y_text);
            const Rational d = distance_exact(x, y, a);
            std::string text = format_rational(d) + " " + format_decimal(d, 12) + "\n";
            if (level > 0) {
                const auto chain = chain_length(x, y, level, a);
                text += "chain " + std::to_string(level) + " " + format_rational(chain.value) + " " +
                        format_decimal(chain.value, 12) + "\n";
            }
            emit(text, "");
        } else if (*graph_arc) {
            const Word w = parse_word(from_text);
            const Word u = parse_word(to_text);
            check_letters(w, m);
            check_letters(u, m);
            std::string text;
            for (const Word& v : arc(w, u)) text += format_word(v) + "\n";
            emit(text, "");
        } else if (*graph_nb) {
            std::string text;
            for (const Word& v : neighbors(parse_word(word_text), m)) text += format_word(v) + "\n";
            emit(text, "");
        } else if (*graph_verify) {
            const auto r = verify_tree_structure(level, m);
            emit(Json{{"level", r.level}, {"m", r.m}, {"vertices", r.vertices}, {"edges", r.edges},
                      {"connected", r.connected}, {"pass", r.pass}},
                 "");
        } else if (*branches_cmd) {
            const Weight a = load_weight(weights_path, m);
            Json arr = Json::array();
            for (const auto& b : branch_points(level, a)) {
                arr.push_back({{"stem", format_word(b.stem)}, {"code", format_point_code(b.code)},
                               {"height_H", format_rational(b.height_h)}, {"height_h", format_rational(b.height_new)}});
            }
            emit(arr, out);
        } else if (*tiles_cmd) {
            const Weight a = load_weight(weights_path, m);
            std::vector<Word> words;
            if (!tiles_word->empty()) {
                words.push_back(parse_word(word_text));
            } else if (!tiles_level->empty()) {
                words = words_of_length(level, a.size());
            } else {
                throw UsageError("tiles needs --word or --level");
            }
            Json arr = Json::array();
            for (const Word& w : words) {
                const Tile t = tile(w, a);
                Json boundary = Json::array();
                for (const auto& p : t.boundary) boundary.push_back(format_point_code(p));
                Json nbs = Json::array();
                if (!w.empty()) {
                    for (const auto& nb : neighbor_tiles(w, a)) {
                        nbs.push_back({{"word", format_word(nb.word)}, {"ratio", format_rational(nb.ratio)},
                                       {"within_bounds", nb.within_bounds}});
                    }
                }
                arr.push_back({{"word", format_word(w)}, {"diameter", format_rational(t.diameter)},
                               {"boundary", boundary}, {"neighbors", nbs}});
            }
            emit(arr, out);
        } else if (*dim) {
            const Weight a = load_weight(weights_path, m);
            if (infinite) {
                if (!(s_value > 0)) throw UsageError("--infinite needs --s > 0");
                const auto c = dimension_bound_infinity(a, s_value);
                emit(Json{{"s", s_value}, {"partial_sum", c.partial_sum}, {"tail_bound", c.tail_bound},
                          {"total", c.total}, {"certified", c.certified}},
                     "");
            } else {
                const auto sol = moran_dimension(a.size(), a, tol);
                emit(format_double(sol.exponent) + "\n", "");
            }
        } else if (*render) {
            const auto segs = skeleton(model_ifs(model, m), model_generators(model), depth);
            if (ends_with(out, ".svg")) {
                render_svg(segs, out);
            } else if (ends_with(out, ".csv")) {
                export_csv(segs, out);
            } else {
                throw UsageError("--out must end in .svg or .csv");
            }
        } else if (*glue) {
            const FiniteGeodesicTree t = tree_from_json(load_json_file(in_path));
            FiniteGeodesicTree result;
            if (step == 1) {
                result = step1_uniform_growth(t);
            } else if (step == 2) {
                result = step2_uniform_valence(t, m);
            } else {
                const Weight a = load_weight(weights_path, m);
                const Rational dl = parse_rational(delta_text);
                const Rational c = parse_rational(c_text);
                const std::size_t d = depth == 0 ? 2 : depth;
                if (!vertices_path.empty()) {
                    result = step3_attach(t, vertex_levels_from_json(load_json_file(vertices_path)), m, a, dl, c, d);
                } else {
                    const auto [subdivided, vl] = spaced_vertex_levels(t, dl, levels);
                    result = step3_attach(subdivided, vl, m, a, dl, c, d);
                }
            }
            emit(tree_to_json(result), out);
        } else if (*verify) {
            const Weight a = load_weight(weights_path, m);
            const auto sep = verify_separation(level, a);
            std::vector<CheckResult> checks;
            checks.push_back({"branch separation (1/2) min Delta", sep.min_ratio,
                              "stems [" + format_word(sep.witness_v) + "] and [" + format_word(sep.witness_w) +
                                  "]: d = " + format_rational(sep.witness_distance) +
                                  ", bound = " + format_rational(sep.witness_bound),
                              sep.pass});
            for (auto& c : verify_uniform_branching(level, a, samples)) checks.push_back(std::move(c));
            emit(checks_to_json(checks), out);
        } else if (*verify_tree) {
            const FiniteGeodesicTree t = tree_from_json(load_json_file(in_path));
            TreeConstants bounds;
            if (!sep_text.empty()) bounds.separation = parse_rational(sep_text);
            if (!growth_text.empty()) bounds.growth = parse_rational(growth_text);
            if (!density_text.empty()) bounds.density = parse_rational(density_text);
            emit(checks_to_json(verify_tree_properties(t, bounds)), out);
        } else if (*hausdorff) {
            const IFS ifs = model_ifs(model, m);
            const auto gens = model_generators(model);
            const double h = hausdorff_distance(skeleton(ifs, gens, from_depth), skeleton(ifs, gens, to_depth));
            emit(format_double(h) + "\n", "");
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
