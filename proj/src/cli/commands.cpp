#include "cli/commands.hpp"

#include "cli/report_io.hpp"
#include "cli/sha256.hpp"
#include "ocy/baseline.hpp"
#include "ocy/error.hpp"
#include "ocy/features.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

namespace ocy::cli {

namespace fs = std::filesystem;

LoadedImage load_image(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw Error(ErrorCode::Io, "error reading '" + path.string() + "'");
    const auto format = detect_format(bytes);
    if (!format)
        throw Error(ErrorCode::MalformedFile, "'" + path.string() + "' is not a PNG, PGM (P5) or BMP file");
    try {
        return {ImageId{path.string(), sha256_hex(bytes)}, decode_grayscale(bytes, *format)};
    } catch (const Error& e) {
        throw Error(e.code(), "'" + path.string() + "': " + e.what());
    }
}

int exit_code_for(const Error& e)
{
    switch (e.code()) {
    case ErrorCode::Io: return exit_io;
    case ErrorCode::MalformedFile:
    case ErrorCode::UnsupportedBitDepth:
    case ErrorCode::ManifestMalformed: return exit_decode;
    case ErrorCode::InvalidArgument: return exit_usage;
    default: return exit_contract;
    }
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

std::vector<ManifestRow> parse_manifest(std::string_view text)
{
    std::vector<ManifestRow> rows;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw Error(ErrorCode::ManifestMalformed,
                        "manifest line " + std::to_string(line_no) + ": expected exactly two fields");
        const auto a = trim(line.substr(0, comma));
        const auto b = trim(line.substr(comma + 1));
        if (!header_seen) {
            if (a != "path_a" || b != "path_b")
                throw Error(ErrorCode::ManifestMalformed, "manifest must start with the header 'path_a,path_b'");
            header_seen = true;
            continue;
        }
        if (a.empty() || b.empty())
            throw Error(ErrorCode::ManifestMalformed,
                        "manifest line " + std::to_string(line_no) + ": empty path");
        rows.push_back({std::string(a), std::string(b)});
    }
    if (!header_seen)
        throw Error(ErrorCode::ManifestMalformed, "manifest is empty; expected the header 'path_a,path_b'");
    return rows;
}

namespace {

struct ComparisonFlags {
    bool lenient = false;
    double epsilon = 0.0;
    std::string modes;
    bool all_modes = false;
    std::string format = "text";
    std::string out;
};

void add_comparison_flags(CLI::App& cmd, ComparisonFlags& flags)
{
    auto* strict = cmd.add_flag("--strict", "Require equal pixel counts (default)");
    auto* lenient = cmd.add_flag("--lenient", flags.lenient, "Allow images of different sizes");
    strict->excludes(lenient);
    cmd.add_option("--epsilon", flags.epsilon, "Zero-bin smoothing for the divergence form (default 0)")
        ->check(CLI::NonNegativeNumber);
    auto* modes = cmd.add_option("--modes", flags.modes, "Comma-separated feature:renorm:reference triples");
    auto* all = cmd.add_flag("--all-modes", flags.all_modes, "Evaluate the full mode matrix (default)");
    modes->excludes(all);
    cmd.add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd.add_option("--out", flags.out, "Output path (default: standard output)");
}

CompareOptions to_options(const ComparisonFlags& flags)
{
    CompareOptions opts;
    opts.strict = !flags.lenient;
    opts.epsilon = flags.epsilon;
    if (!flags.modes.empty())
        opts.modes = parse_mode_list(flags.modes);
    return opts;
}

OutputFormat parse_format(const std::string& name)
{
    if (name == "json")
        return OutputFormat::Json;
    if (name == "csv")
        return OutputFormat::Csv;
    return OutputFormat::Text;
}

void write_report(const OrderReport& report, OutputFormat format, std::ostream& out)
{
    switch (format) {
    case OutputFormat::Json: write_report_json(report, out); break;
    case OutputFormat::Csv: write_report_csv(report, out); break;
    case OutputFormat::Text: out << headline_line(report) << "\n"; break;
    }
}

// Writes through `write` either to `fallback` or to the file at `path`.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& write)
{
    if (path.empty() || path == "-") {
        write(fallback);
        fallback.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    write(file);
    file.flush();
    if (!file)
        throw Error(ErrorCode::Io, "error writing '" + path + "'");
}

void warn_clipping(const OrderReport& report, std::ostream& err)
{
    for (const ReportEntry& e : report.entries)
        if (!e.skipped && e.clipped_mass > clipped_mass_warning)
            err << "warning: " << to_string(e.mode) << " clipped mass " << format_real(e.clipped_mass)
                << " exceeds " << format_real(clipped_mass_warning) << "; means are only approximately equal\n";
}

OrderReport compare_files(const fs::path& a, const fs::path& b, const CompareOptions& opts)
{
    LoadedImage ia = load_image(a);
    LoadedImage ib = load_image(b);
    OrderReport report = compare(ia.grid, ib.grid, opts);
    report.image_a = std::move(ia.id);
    report.image_b = std::move(ib.id);
    return report;
}

int cmd_compare(const std::string& a, const std::string& b, const ComparisonFlags& flags, std::ostream& out,
                std::ostream& err)
{
    const CompareOptions opts = to_options(flags);
    const OutputFormat format = parse_format(flags.format);
    const OrderReport report = compare_files(a, b, opts);
    warn_clipping(report, err);
    with_output(flags.out, out, [&](std::ostream& os) { write_report(report, format, os); });
    const bool report_on_stdout = flags.out.empty() || flags.out == "-";
    if (format != OutputFormat::Text && !report_on_stdout)
        out << headline_line(report) << "\n";
    return exit_ok;
}

struct BatchFlags {
    std::string report_dir;
    unsigned jobs = 0;
};

struct BatchRow {
    ManifestRow paths;
    std::optional<OrderReport> report;
    std::string error;
};

int cmd_batch(const std::string& manifest_path, const ComparisonFlags& flags, const BatchFlags& batch,
              std::ostream& out, std::ostream& err)
{
    const CompareOptions opts = to_options(flags);
    const OutputFormat format = parse_format(flags.format);

    std::ifstream in(manifest_path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open manifest '" + manifest_path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const fs::path base = fs::path(manifest_path).parent_path();
    const auto resolve = [&](const std::string& p) {
        const fs::path path(p);
        return path.is_absolute() ? path : base / path;
    };

    std::vector<BatchRow> rows;
    for (auto& r : parse_manifest(text))
        rows.push_back({std::move(r), std::nullopt, {}});

    // Rows are independent; results land in manifest order regardless of
    // which worker finishes first.
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            BatchRow& row = rows[i];
            try {
                row.report = compare_files(resolve(row.paths.path_a), resolve(row.paths.path_b), opts);
            } catch (const Error& e) {
                row.error = std::string(to_string(e.code())) + ": " + e.what();
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(batch.jobs ? batch.jobs : std::thread::hardware_concurrency(),
                                                          static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1))));
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j)
            pool.emplace_back(worker);
        worker();
    }

    if (!batch.report_dir.empty()) {
        std::error_code ec;
        fs::create_directories(batch.report_dir, ec);
        const char* ext = format == OutputFormat::Json ? ".json" : format == OutputFormat::Csv ? ".csv" : ".txt";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].report)
                continue;
            char name[32];
            std::snprintf(name, sizeof(name), "pair_%04zu%s", i + 1, ext);
            try {
                with_output((fs::path(batch.report_dir) / name).string(), out,
                            [&](std::ostream& os) { write_report(*rows[i].report, format, os); });
            } catch (const Error& e) {
                rows[i].report.reset();
                rows[i].error = std::string(to_string(e.code())) + ": " + e.what();
            }
        }
    }

    bool all_ok = true;
    with_output(flags.out, out, [&](std::ostream& os) {
        os << "row,path_a,path_b,status,headline_delta_s,error\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const BatchRow& row = rows[i];
            os << i + 1 << ',' << csv_field(row.paths.path_a) << ',' << csv_field(row.paths.path_b) << ',';
            if (row.report) {
                os << "ok," << format_real(headline_ocy(*row.report)) << ",\n";
            } else {
                all_ok = false;
                os << "error,," << csv_field(row.error) << "\n";
            }
        }
    });
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].report)
            err << "row " << i + 1 << ": " << rows[i].error << "\n";
    return all_ok ? exit_ok : exit_batch_partial;
}

struct HistFlags {
    std::string image;
    std::string feature;
    std::string traversal = "boustrophedon";
    std::string out;
};

int cmd_hist(const HistFlags& flags, std::ostream& out)
{
    const LoadedImage img = load_image(flags.image);
    const PixelSequence seq = linearize(img.grid, *parse_traversal(flags.traversal));
    const Distribution d = build(extract(seq, *parse_feature_kind(flags.feature)));
    with_output(flags.out, out, [&](std::ostream& os) { write_histogram_csv(d, os); });
    return exit_ok;
}

struct BaselineFlags {
    std::string kind;
    std::size_t width = 0;
    std::size_t height = 0;
    std::uint64_t seed = 0;
    int level = 0;
    std::string out;
    std::string against;
    bool ideal_noise = false;
    std::string mode = "gray:mass:first";
    double epsilon = 0.0;
    bool lenient = false;
};

int cmd_baseline(const BaselineFlags& flags, std::ostream& out)
{
    BaselineSpec spec;
    spec.kind = flags.kind == "noise" ? BaselineKind::UniformNoise : BaselineKind::Constant;
    spec.seed = flags.seed;
    spec.level = flags.level;
    spec.width = flags.width;
    spec.height = flags.height;

    if (flags.against.empty()) {
        if (flags.out.empty())
            throw Error(ErrorCode::InvalidArgument, "baseline needs --out (or --against IMAGE)");
        if (flags.ideal_noise)
            throw Error(ErrorCode::InvalidArgument, "--ideal-noise only applies with --against");
        const auto bytes = encode_pgm(generate(spec));
        with_output(flags.out, out, [&](std::ostream& os) {
            os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        });
        return exit_ok;
    }

    const LoadedImage img = load_image(flags.against);
    if (spec.width == 0)
        spec.width = img.grid.width();
    if (spec.height == 0)
        spec.height = img.grid.height();
    const Mode mode = parse_mode(flags.mode);

    OrderValue value;
    std::string label;
    if (flags.ideal_noise) {
        if (spec.kind != BaselineKind::UniformNoise || mode.feature != FeatureKind::Gray
            || mode.renorm != RenormMethod::MassScale || mode.reference != ReferenceChoice::First)
            throw Error(ErrorCode::InvalidArgument, "--ideal-noise needs --kind noise and mode gray:mass:first");
        value = absolute_order_ideal(img.grid, flags.epsilon);
        label = "ideal-noise";
    } else {
        value = absolute_order(img.grid, spec, mode, flags.epsilon, !flags.lenient);
        label = flags.kind == "noise" ? "noise seed=" + std::to_string(spec.seed)
                                      : "black level=" + std::to_string(spec.level);
        if (!flags.out.empty()) {
            const auto bytes = encode_pgm(generate(spec));
            with_output(flags.out, out, [&](std::ostream& os) {
                os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
            });
        }
    }
    out << "absolute_order(" << label << ", " << to_string(mode) << "): delta_s=" << format_real(value.delta_s)
        << " kl=" << format_real(value.kl) << "\n";
    return exit_ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Relative degree of order between grayscale images of material structure", "ocy"};
    app.require_subcommand(1);

    ComparisonFlags cmp;
    std::string path_a, path_b;
    auto* compare_cmd = app.add_subcommand("compare", "Compare two images across the mode matrix");
    compare_cmd->add_option("A", path_a, "First image")->required();
    compare_cmd->add_option("B", path_b, "Second image")->required();
    add_comparison_flags(*compare_cmd, cmp);

    std::string manifest;
    BatchFlags batch;
    auto* batch_cmd = app.add_subcommand("batch", "Compare every pair listed in a CSV manifest");
    batch_cmd->add_option("MANIFEST", manifest, "CSV with header path_a,path_b")->required();
    add_comparison_flags(*batch_cmd, cmp);
    batch_cmd->add_option("--report-dir", batch.report_dir, "Write one report per pair into this directory");
    batch_cmd->add_option("--jobs", batch.jobs, "Worker threads (default: hardware concurrency)");

    HistFlags hist;
    auto* hist_cmd = app.add_subcommand("hist", "Dump the feature histogram of one image as CSV");
    hist_cmd->add_option("IMG", hist.image, "Image")->required();
    hist_cmd->add_option("--feature", hist.feature, "Feature")
        ->required()
        ->check(CLI::IsMember({"gray", "diff", "absdiff", "ratio"}));
    hist_cmd->add_option("--traversal", hist.traversal, "Linearization")
        ->check(CLI::IsMember({"boustrophedon", "rowmajor"}));
    hist_cmd->add_option("--out", hist.out, "Output path (default: standard output)");

    BaselineFlags base;
    auto* base_cmd = app.add_subcommand("baseline", "Generate a reference image or score an image against one");
    base_cmd->add_option("--kind", base.kind, "noise or black")->required()->check(CLI::IsMember({"noise", "black"}));
    base_cmd->add_option("--width", base.width, "Width in pixels")->check(CLI::PositiveNumber);
    base_cmd->add_option("--height", base.height, "Height in pixels")->check(CLI::PositiveNumber);
    base_cmd->add_option("--seed", base.seed, "Noise seed");
    base_cmd->add_option("--level", base.level, "Constant gray level (default 0)")->check(CLI::Range(0, 255));
    base_cmd->add_option("--out", base.out, "Write the baseline as binary PGM");
    base_cmd->add_option("--against", base.against, "Score this image against the baseline");
    base_cmd->add_flag("--ideal-noise", base.ideal_noise, "Use the exact uniform density instead of a sample");
    base_cmd->add_option("--mode", base.mode, "feature:renorm:reference (default gray:mass:first)");
    base_cmd->add_option("--epsilon", base.epsilon, "Zero-bin smoothing")->check(CLI::NonNegativeNumber);
    auto* b_strict = base_cmd->add_flag("--strict", "Require equal pixel counts (default)");
    auto* b_lenient = base_cmd->add_flag("--lenient", base.lenient, "Allow a baseline of a different size");
    b_strict->excludes(b_lenient);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*compare_cmd)
            return cmd_compare(path_a, path_b, cmp, out, err);
        if (*batch_cmd)
            return cmd_batch(manifest, cmp, batch, out, err);
        if (*hist_cmd)
            return cmd_hist(hist, out);
        if (*base_cmd) {
            if (base.against.empty() && (base.width == 0 || base.height == 0)) {
                err << "error: baseline needs --width and --height\n";
                return exit_usage;
            }
            return cmd_baseline(base, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return exit_usage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace ocy::cli
