#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jetvar/cli.hpp"

namespace fs = std::filesystem;

namespace {

// Write to a sibling temporary and rename so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream o(tmp, std::ios::binary);
        if (!o) throw std::runtime_error("cannot write " + tmp.string());
        o << text;
        if (!o.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch runner for jet-bundle variational analyses"};
    std::string input, outdir;
    std::uint64_t seed = 0;
    std::vector<std::string> tol_overrides, filter, inline_tasks;
    bool list = false;
    int jobs = 1;
    app.add_option("input", input, "problem document (JSON); '-' reads stdin");
    app.add_option("-o,--output", outdir, "directory for report.txt and CSV tables");
    auto* seed_opt = app.add_option("-s,--seed", seed, "override the run seed");
    app.add_option("--tol", tol_overrides, "tolerance override task=value, repeatable");
    app.add_option("-t,--task", filter, "run only tasks with this name, repeatable");
    app.add_option("-r,--run", inline_tasks, "append a task line such as \"jacobi-poly degree=2\", repeatable");
    app.add_option("-j,--jobs", jobs, "worker threads")->check(CLI::Range(1, 64));
    app.add_flag("-l,--list-tasks", list, "print the task catalog and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& t : jv::list_tasks()) std::cout << t.name << "  " << t.description << "\n";
        return 0;
    }

    try {
        std::string text = "{}";
        if (!input.empty()) {
            std::stringstream ss;
            if (input == "-") {
                ss << std::cin.rdbuf();
            } else {
                std::ifstream in(input);
                if (!in) {
                    std::cerr << "error: cannot read " << input << "\n";
                    return 2;
                }
                ss << in.rdbuf();
            }
            text = ss.str();
        } else if (inline_tasks.empty()) {
            std::cerr << "error: no input document and no --run task\n";
            return 2;
        }
        jv::ProblemSpec spec = jv::parse_problem(text);
        for (std::size_t i = 0; i < inline_tasks.size(); ++i) {
            std::string where = "--run " + std::to_string(i + 1);
            jv::TaskRequest t;
            try {
                t = jv::parse_task_line(inline_tasks[i]);
            } catch (const jv::SpecError& e) {
                throw jv::SpecError(e.what(), where);
            }
            jv::validate_task(t, where);
            spec.tasks.push_back(t);
        }

        jv::RunOptions opt;
        if (*seed_opt) opt.seed = seed;
        opt.task_filter = filter;
        opt.jobs = jobs;
        for (const auto& kv : tol_overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                std::cerr << "error: --tol expects task=value, got " << kv << "\n";
                return 2;
            }
            opt.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }

        jv::Report rep = jv::run(spec, opt);
        std::string doc = rep.render();
        std::cout << doc;
        if (!outdir.empty()) {
            fs::create_directories(outdir);
            for (const auto& [name, body] : rep.csv_files()) write_atomic(fs::path(outdir) / name, body);
            write_atomic(fs::path(outdir) / "report.txt", doc);
        }
        return rep.ok() ? 0 : 1;
    } catch (const jv::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
