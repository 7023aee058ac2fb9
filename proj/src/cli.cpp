#include "etd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "etd/distances.hpp"
#include "etd/io.hpp"
#include "etd/ml_harness.hpp"

namespace fs = std::filesystem;

namespace etd::cli {

namespace {

Variant parse_variant(const std::string& name) {
    static const std::map<std::string, Variant> names{
        {"etd", Variant::etd}, {"basic-etd", Variant::basic_etd}, {"swd", Variant::swd},
        {"wd", Variant::exact_wd}, {"ps", Variant::ps}, {"cosine-etd", Variant::cosine_etd}};
    const auto it = names.find(name);
    if (it == names.end()) throw InvalidArgument("unknown metric '" + name + "'");
    return it->second;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Options shared by `dist` and `matrix`.
struct MetricOptions {
    std::string metric = "etd";
    double p = 2.0;
    std::size_t angles = 1;
    std::vector<double> angle_list;
    std::vector<std::size_t> dim_angles;
    std::size_t random_angles = 0;
    std::uint64_t angle_seed = 0;
    std::vector<double> weights;
    bool d0_zero_birth = false;
    bool d0_root = false;
    std::size_t slices = 50;
    std::size_t wd_guard = kDefaultWassersteinGuard;

    void attach(CLI::App* app) {
        app->add_option("--metric", metric, "etd | basic-etd | swd | wd | ps | cosine-etd")->capture_default_str();
        app->add_option("--p", p, "Wasserstein exponent (>= 1)")->capture_default_str();
        app->add_option("--angles", angles, "use the n evenly spaced angles A_n")->capture_default_str();
        app->add_option("--angle-list", angle_list, "explicit angles in [0, pi)")->delimiter(',');
        app->add_option("--dim-angles", dim_angles, "angle count per homology dimension")->delimiter(',');
        app->add_option("--random-angles", random_angles, "n uniformly random angles");
        app->add_option("--angle-seed", angle_seed, "seed for --random-angles");
        app->add_option("--weights", weights, "per-dimension weights w0,w1,...")->delimiter(',');
        app->add_flag("--d0-zero-birth", d0_zero_birth, "dimension 0 uses death coordinates only");
        app->add_flag("--d0-root", d0_root, "scale the dimension-0 term by #A^(1/p) instead of #A");
        app->add_option("--slices", slices, "slice count for swd")->capture_default_str();
        app->add_option("--wd-guard", wd_guard, "largest point count for exact wd")->capture_default_str();
    }

    DistanceConfig build() const {
        DistanceConfig c;
        c.variant = parse_variant(metric);
        c.p = p;
        if (!angle_list.empty()) c.angles = AngleSet(angle_list);
        else if (random_angles > 0) c.angles = random_angle_set(random_angles, angle_seed);
        else c.angles = make_angle_set(angles);
        for (std::size_t n : dim_angles) c.per_dimension_angles.push_back(make_angle_set(n));
        c.weights = weights;
        c.zero_birth_dim0 = d0_zero_birth;
        c.d0_scaling = d0_root ? D0Scaling::angle_count_root : D0Scaling::angle_count;
        c.n_slices = slices;
        c.wd_size_guard = wd_guard;
        c.check();
        return c;
    }
};

std::vector<fs::path> diagram_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    if (files.empty()) throw DataError("no .csv diagrams in " + dir.string());
    return files;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) out << text;
    else io::write_atomically(path, text);
}

} // namespace

DistanceConfig parse_metric(const std::string& spec, double p) {
    const auto colon = spec.find(':');
    DistanceConfig c;
    c.variant = parse_variant(spec.substr(0, colon));
    c.p = p;
    if (colon != std::string::npos) {
        std::size_t n = 0;
        const std::string num = spec.substr(colon + 1);
        const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
        if (ec != std::errc() || ptr != num.data() + num.size() || n == 0)
            throw InvalidArgument("bad count in metric '" + spec + "'");
        if (c.variant == Variant::swd) c.n_slices = n;
        else if (c.variant == Variant::etd || c.variant == Variant::cosine_etd) c.angles = make_angle_set(n);
        else throw InvalidArgument("metric '" + spec + "' takes no count");
    }
    c.check();
    return c;
}

std::string dist_json(const DistanceConfig& config, double value, const std::vector<double>& per_dimension) {
    nlohmann::ordered_json doc;
    doc["metric"] = variant_name(config.variant);
    doc["config"] = metric_tag(config);
    doc["value"] = value;
    doc["per_dimension"] = per_dimension;
    return doc.dump() + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Persistence diagram distances"};
    app.require_subcommand(1);

    // dist
    auto* dist = app.add_subcommand("dist", "distance between two diagram files");
    std::string dist_a, dist_b;
    MetricOptions dist_opts;
    dist->add_option("A", dist_a)->required();
    dist->add_option("B", dist_b)->required();
    dist_opts.attach(dist);

    // matrix
    auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix over a directory");
    std::string matrix_dir, matrix_out;
    unsigned matrix_threads = 0;
    MetricOptions matrix_opts;
    matrix->add_option("DIR", matrix_dir)->required();
    matrix->add_option("--out", matrix_out, "output CSV (stdout when omitted)");
    matrix->add_option("--threads", matrix_threads, "worker threads (0 = hardware)");
    matrix_opts.attach(matrix);

    // knn
    auto* knn = app.add_subcommand("knn", "randomized kNN hyperparameter search");
    std::string knn_matrix, knn_labels;
    int knn_kmax = 9, knn_trials = 20;
    std::uint64_t knn_seed = 0;
    double knn_val = 0.2;
    knn->add_option("--matrix", knn_matrix)->required();
    knn->add_option("--labels", knn_labels)->required();
    knn->add_option("--k-max", knn_kmax)->capture_default_str();
    knn->add_option("--trials", knn_trials)->capture_default_str();
    knn->add_option("--seed", knn_seed)->capture_default_str();
    knn->add_option("--validation", knn_val, "validation fraction")->capture_default_str();

    // curves
    auto* curves = app.add_subcommand("curves", "topological curves over a directory sequence");
    std::string curves_dir, curves_metrics, curves_out;
    double curves_p = 2.0;
    std::size_t curves_guard = kDefaultWassersteinGuard;
    curves->add_option("DIR", curves_dir)->required();
    curves->add_option("--metrics", curves_metrics, "e.g. etd:4,swd:256,ps")->required();
    curves->add_option("--out", curves_out);
    curves->add_option("--p", curves_p)->capture_default_str();
    curves->add_option("--wd-guard", curves_guard)->capture_default_str();

    // bench
    auto* bench = app.add_subcommand("bench", "timing table on random diagrams");
    std::vector<std::size_t> bench_sizes;
    std::string bench_metrics_list, bench_out;
    int bench_reps = 5, bench_k = 0;
    std::uint64_t bench_seed = 0;
    double bench_p = 2.0;
    bench->add_option("--sizes", bench_sizes)->required()->delimiter(',');
    bench->add_option("--metrics", bench_metrics_list)->required();
    bench->add_option("--reps", bench_reps)->capture_default_str();
    bench->add_option("--seed", bench_seed)->capture_default_str();
    bench->add_option("--k", bench_k, "top homology dimension")->capture_default_str();
    bench->add_option("--p", bench_p)->capture_default_str();
    bench->add_option("--out", bench_out);

    // gen
    auto* gen = app.add_subcommand("gen", "write a synthetic labeled dataset");
    std::string gen_spec, gen_out, gen_labels;
    gen->add_option("--spec", gen_spec)->required();
    gen->add_option("--out", gen_out)->required();
    gen->add_option("--labels", gen_labels, "label CSV path (default: <out>_labels.csv)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*dist) {
            const auto config = dist_opts.build();
            const auto a = io::read_diagram(dist_a);
            const auto b = io::read_diagram(dist_b);
            const auto r = distance(a, b, config);
            out << dist_json(config, r.value, r.per_dimension);
        } else if (*matrix) {
            const auto config = matrix_opts.build();
            std::vector<ExtendedDiagram> diagrams;
            std::vector<std::string> labels;
            for (const auto& f : diagram_files(matrix_dir)) {
                diagrams.push_back(io::read_diagram(f));
                labels.push_back(f.stem().string());
            }
            const auto m = distance_matrix(diagrams, config, labels, matrix_threads);
            std::ostringstream os;
            io::format_matrix(os, m);
            emit(os.str(), matrix_out, out);
        } else if (*knn) {
            if (knn_kmax < 1) throw InvalidArgument("--k-max must be >= 1");
            const auto m = io::read_matrix(knn_matrix);
            std::map<std::string, std::string> by_id;
            for (const auto& [id, label] : io::read_labels(knn_labels)) by_id[id] = label;
            std::set<std::string> distinct;
            for (const auto& [id, label] : by_id) distinct.insert(label);
            std::map<std::string, int> class_of;
            for (const auto& label : distinct) class_of.emplace(label, int(class_of.size()));
            std::vector<int> labels;
            for (const auto& id : m.labels) {
                const auto it = by_id.find(id);
                if (it == by_id.end()) throw DataError("no label for matrix row '" + id + "'");
                labels.push_back(class_of.at(it->second));
            }
            KnnConfig kc;
            kc.k_candidates.clear();
            for (int k = 1; k <= knn_kmax; ++k) kc.k_candidates.push_back(k);
            kc.n_search_trials = knn_trials;
            kc.seed = knn_seed;
            kc.validation_fraction = knn_val;
            const auto best = randomized_search(m, labels, kc);
            nlohmann::ordered_json doc;
            doc["k"] = best.k;
            doc["weighting"] = weighting_name(best.weighting);
            doc["accuracy"] = best.accuracy;
            out << doc.dump() << "\n";
        } else if (*curves) {
            std::vector<DistanceConfig> configs;
            for (const auto& s : split_list(curves_metrics)) configs.push_back(parse_metric(s, curves_p));
            if (configs.empty()) throw InvalidArgument("--metrics is empty");
            std::vector<ExtendedDiagram> sequence;
            for (const auto& f : diagram_files(curves_dir)) sequence.push_back(io::read_diagram(f));
            const auto c = topological_curves(sequence, configs, curves_guard);
            std::ostringstream os;
            io::format_curves(os, c);
            emit(os.str(), curves_out, out);
        } else if (*bench) {
            std::vector<DistanceConfig> configs;
            for (const auto& s : split_list(bench_metrics_list)) configs.push_back(parse_metric(s, bench_p));
            if (configs.empty()) throw InvalidArgument("--metrics is empty");
            const auto rows = bench_metrics(bench_sizes, configs, bench_reps, bench_seed, bench_k);
            std::ostringstream os;
            io::format_bench(os, rows);
            emit(os.str(), bench_out, out);
        } else if (*gen) {
            const auto specs = io::read_synthetic_spec(gen_spec);
            const auto data = generate_synthetic_dataset(specs);
            const fs::path dir(gen_out);
            fs::create_directories(dir);
            std::vector<std::pair<std::string, std::string>> labels;
            std::map<int, int> counter;
            for (std::size_t i = 0; i < data.diagrams.size(); ++i) {
                const int cls = data.labels[i];
                std::ostringstream name;
                name << "c" << cls << "_s" << std::setw(4) << std::setfill('0') << counter[cls]++;
                io::write_diagram(data.diagrams[i], dir / (name.str() + ".csv"));
                labels.emplace_back(name.str(), std::to_string(cls));
            }
            fs::path labels_path = gen_labels.empty() ? fs::path(dir.string() + "_labels.csv") : fs::path(gen_labels);
            if (gen_labels.empty() && dir.filename().empty())
                labels_path = fs::path(dir.parent_path().string() + "_labels.csv");
            io::write_labels(labels, labels_path);
        }
    } catch (const ResourceLimit& e) {
        err << "error: resource: " << e.what() << "\n";
        return kResource;
    } catch (const InvalidArgument& e) {
        err << "error: usage: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        err << "error: data: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        err << "error: data: " << e.what() << "\n";
        return kData;
    }
    return kOk;
}

} // namespace etd::cli
