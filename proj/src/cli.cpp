#include "cyclesight/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cyclesight/errors.hpp"
#include "cyclesight/json_io.hpp"
#include "cyclesight/presets.hpp"
#include "cyclesight/protocol.hpp"
#include "cyclesight/report.hpp"
#include "cyclesight/server.hpp"

namespace cyclesight {

namespace fs = std::filesystem;

namespace {

Tolerances env_tolerances() {
    const char* text = std::getenv("CYCLESIGHT_TOL");
    return text ? parse_tolerances(text) : Tolerances{};
}

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::Io ? kExitIo : kExitUsage;
}

}  // namespace

Mat2 parse_matrix(const std::string& text) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw Error(ErrorCode::BadRequest, "matrix entry is not a number: " + tok);
        v.push_back(x);
    }
    if (v.size() != 4) throw Error(ErrorCode::BadRequest, "--matrix needs exactly four numbers \"a b c d\"");
    Mat2 m{v[0], v[1], v[2], v[3]};
    if (!m.finite()) throw Error(ErrorCode::BadRequest, "matrix entries must be finite");
    if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "the matrix must be nonzero");
    return m;
}

Artifacts build_artifacts(const Mat2& m, const RunSettings& st, const Tolerances& tol, const std::string& preset) {
    if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "the matrix must be nonzero");
    Trajectory traj = trajectory(m, st.steps, st.algo, st.conv, st.shift, tol);
    Json tj = trajectory_json(traj, st.algo, st.conv, st.shift);
    Json report = run_report(traj, st.algo, st.conv, st.shift, st.model, tol);
    if (!preset.empty()) {
        tj["preset"] = preset;
        tj["preset_table_version"] = kPresetTableVersion;
        report["preset"] = preset;
    }
    Scene scene = scene_v2(traj.iterates, st.model, Viewport{}, tol);
    return {canonical(tj), emit_svg(scene), canonical(report)};
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw Error(ErrorCode::Io, "write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot rename into " + path.string());
    }
}

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::Io, "cannot create directory " + dir.string());
}

void write_all(const fs::path& dir, const Artifacts& a, bool svg, bool json) {
    ensure_dir(dir);
    if (json) {
        write_atomic(dir / "trajectory.json", a.trajectory_json);
        write_atomic(dir / "report.json", a.report_json);
    }
    if (svg) write_atomic(dir / "scene.svg", a.scene_svg);
}

}  // namespace

fs::path write_preset(const std::string& name, const fs::path& out_dir, const Tolerances& tol) {
    const Preset& p = find_preset(name);
    RunSettings st{p.steps, p.algo, p.conv, p.shift, Model::UnitDisk};
    fs::path dir = out_dir / p.name;
    write_all(dir, build_artifacts(p.matrix, st, tol, p.name), true, true);
    return dir;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Oriented-cycle views of 2x2 matrices and their QR/LR iterations", "cyclesight"};
    app.require_subcommand(1);

    std::string preset_name;
    std::string out_dir;
    auto* preset_cmd = app.add_subcommand("preset", "Write trajectory, scene and report for a named preset");
    preset_cmd->add_option("name", preset_name, "case01 .. case12, or 'all'")->required();
    preset_cmd->add_option("--out", out_dir, "Output directory")->required();

    std::string matrix_text;
    std::string algo = "qr", conv = "negdetflip", shift = "none", model = "disk";
    std::size_t steps = 30;
    bool want_svg = false, want_json = false;
    std::string run_out;
    auto* run_cmd = app.add_subcommand("run", "Iterate an arbitrary matrix");
    run_cmd->add_option("--matrix", matrix_text, "Entries \"a b c d\" of [[a, b], [c, d]]")->required();
    run_cmd->add_option("--algo", algo, "qr | lr")->capture_default_str();
    run_cmd->add_option("--steps", steps, "Number of steps")->capture_default_str()->check(CLI::Range(0, 100000));
    run_cmd->add_option("--conv", conv, "plain | negdetflip")->capture_default_str();
    run_cmd->add_option("--shift", shift, "none | rayleigh | wilkinson")->capture_default_str();
    run_cmd->add_option("--model", model, "axis | disk")->capture_default_str();
    run_cmd->add_flag("--svg", want_svg, "Emit the scene SVG");
    run_cmd->add_flag("--json", want_json, "Emit trajectory and report JSON");
    run_cmd->add_option("--out", run_out, "Write files into this directory instead of stdout");

    std::string classify_matrix, classify_model = "disk";
    auto* classify_cmd = app.add_subcommand("classify", "Print the classification report");
    classify_cmd->add_option("--matrix", classify_matrix, "Entries \"a b c d\"")->required();
    classify_cmd->add_option("--model", classify_model, "axis | disk")->capture_default_str();

    int port = 8080;
    std::string host = "127.0.0.1";
    std::string static_dir;
    bool stdio = false;
    auto* serve_cmd = app.add_subcommand("serve", "Start the interactive bridge");
    serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)")->capture_default_str();
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--static", static_dir, "Directory of UI assets to serve at /");
    serve_cmd->add_flag("--stdio", stdio, "Speak the protocol over stdin/stdout instead of HTTP");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Tolerances tol = env_tolerances();

        if (*preset_cmd) {
            if (preset_name == "all") {
                for (const auto& p : presets()) out << write_preset(p.name, out_dir, tol).string() << "\n";
            } else {
                out << write_preset(preset_name, out_dir, tol).string() << "\n";
            }
            return kExitOk;
        }

        if (*run_cmd) {
            RunSettings st{steps, parse_algo(algo), parse_convention(conv), parse_shift(shift), parse_model(model)};
            Artifacts a = build_artifacts(parse_matrix(matrix_text), st, tol);
            if (!run_out.empty()) {
                bool all = !want_svg && !want_json;
                write_all(run_out, a, all || want_svg, all || want_json);
                return kExitOk;
            }
            if (want_svg && want_json) {
                err << "run: choose one of --svg or --json when writing to stdout, or pass --out\n";
                return kExitUsage;
            }
            if (want_svg) {
                out << a.scene_svg;
            } else {
                Json both{{"trajectory", Json::parse(a.trajectory_json)}, {"report", Json::parse(a.report_json)}};
                out << canonical(both);
            }
            return kExitOk;
        }

        if (*classify_cmd) {
            out << canonical(classification_report(parse_matrix(classify_matrix), parse_model(classify_model), tol));
            return kExitOk;
        }

        if (*serve_cmd) {
            if (stdio) {
                serve_stdio(std::cin, out, tol);
                return kExitOk;
            }
            HttpBridge bridge(tol, static_dir.empty() ? std::nullopt : std::optional<std::string>(static_dir));
            int bound = bridge.bind(host, port);
            if (bound < 0) {
                err << "serve: cannot bind " << host << ":" << port << "\n";
                return kExitIo;
            }
            out << "listening on http://" << host << ":" << bound << std::endl;
            return bridge.listen() ? kExitOk : kExitIo;
        }
    } catch (const Error& e) {
        err << "error (" << code_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitUsage;
}

}  // namespace cyclesight
