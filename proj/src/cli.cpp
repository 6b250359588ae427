#include "ffnn/cli.hpp"

#include <ostream>
#include <utility>

#include "CLI11.hpp"
#include "ffnn/backprop.hpp"
#include "ffnn/error.hpp"
#include "ffnn/exercises.hpp"
#include "ffnn/grad_oracle.hpp"
#include "ffnn/io.hpp"

namespace ffnn::cli {

namespace {

struct UsageError : Error {
    using Error::Error;
};

template <typename F>
auto as_usage(F&& parse) {
    try {
        return parse();
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

struct EvalArgs {
    std::string net;
    std::string input;
};

struct TrainArgs {
    std::string shape;
    std::string data;
    std::string out;
    std::string trace;
    std::string init_range = "-0.5,0.5";
    std::string scheme = "per_sample";
    TrainConfig config;
};

struct GradcheckArgs {
    std::string net;
    std::string data;
    double epsilon = FiniteDiffConfig{}.epsilon;
};

struct Ex31Args {
    std::string variant;
    std::string input;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
    const Vector input = as_usage([&] { return io::parse_vector(a.input); });
    const Network net = io::load_network(io::read_file(a.net));
    out << io::format_vector(evaluate(net, input)) << '\n';
    return kOk;
}

int cmd_train(TrainArgs a, std::ostream& out) {
    const NetworkShape shape = as_usage([&] { return io::parse_shape_spec(a.shape); });
    const Vector range = as_usage([&] { return io::parse_vector(a.init_range); });
    if (range.size() != 2) throw UsageError("--init-range expects LO,HI");
    a.config.init_low = range[0];
    a.config.init_high = range[1];
    a.config.update_scheme = a.scheme == "full_batch" ? UpdateScheme::FullBatch : UpdateScheme::PerSample;

    const Dataset data =
        io::load_dataset(io::read_file(a.data), shape.input_dim, shape.layers.back().n_neurons);
    const auto [net, report] = train(shape, data, a.config);

    io::write_file(a.out, io::save_network(net));
    if (!a.trace.empty()) io::write_file(a.trace, io::format_trace_csv(report));
    out << "epochs_run=" << report.epochs_run << '\n'
        << "converged=" << (report.converged ? "true" : "false") << '\n'
        << "final_error=" << io::format_number(report.error_trace.back()) << '\n';
    return kOk;
}

int cmd_gradcheck(const GradcheckArgs& a, std::ostream& out) {
    const Network net = io::load_network(io::read_file(a.net));
    const Dataset data = io::load_dataset(io::read_file(a.data), net.input_dim(), net.output_dim());
    if (data.empty()) throw ValidationError("gradcheck needs at least one sample");

    const FiniteDiffConfig fd{a.epsilon};
    GradientDeviation dev;
    for (const auto& s : data) {
        const Gradient analytic = backprop_gradient(net, forward(net, s.input), s.target);
        dev |= compare_gradients(analytic, finite_diff_gradient(net, s, fd));
    }
    out << "samples=" << data.size() << '\n'
        << "max_abs_deviation=" << io::format_number(dev.max_abs) << '\n'
        << "max_rel_deviation=" << io::format_number(dev.max_rel) << '\n'
        << "within_tolerance=" << (dev.within_tolerance ? "true" : "false") << '\n';
    return dev.within_tolerance ? kOk : kGradcheckFailed;
}

int cmd_ex31(const Ex31Args& a, std::ostream& out) {
    const Vector input = as_usage([&] { return io::parse_vector(a.input); });
    exercises::Ex31Weights w;
    if (a.variant == "swap") {
        w = exercises::ex31_swap();
    } else if (a.variant == "double") {
        w = exercises::ex31_double();
    } else if (a.variant == "and-or") {
        w = exercises::ex31_and_or();
    } else {
        w = exercises::ex31_all_ones();
    }
    out << io::format_vector(evaluate(exercises::build_ex31(w), input)) << '\n';
    return kOk;
}

int cmd_ex41(std::uint64_t seed, std::ostream& out) {
    TrainConfig config;
    config.seed = seed;
    const auto [net, report] = exercises::run_ex41(config);
    out << "epochs_run=" << report.epochs_run << '\n'
        << "converged=" << (report.converged ? "true" : "false") << '\n'
        << "final_error=" << io::format_number(report.error_trace.back()) << '\n'
        << "output=" << io::format_vector(evaluate(net, exercises::ex41_sample().input)) << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Feed-forward neural networks trained by backpropagation", "ffnn"};
    app.require_subcommand(1);

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a saved network on one input");
    eval_cmd->add_option("--net", eval.net, "Network JSON file")->required();
    eval_cmd->add_option("--input", eval.input, "Comma-separated input vector")->required();

    TrainArgs tr;
    auto* train_cmd = app.add_subcommand("train", "Train a network by gradient descent");
    train_cmd->add_option("--net-shape", tr.shape, "Architecture, e.g. 3-2s-3ib")->required();
    train_cmd->add_option("--data", tr.data, "Training CSV (x1..xn,d1..dm)")->required();
    train_cmd->add_option("--out", tr.out, "Where to write the trained network")->required();
    train_cmd->add_option("--trace", tr.trace, "Where to write the epoch,error trace");
    train_cmd->add_option("--eta", tr.config.eta, "Learning rate")->capture_default_str();
    train_cmd->add_option("--epochs", tr.config.max_epochs, "Maximum epochs")->capture_default_str();
    train_cmd->add_option("--target-error", tr.config.target_error, "Stop once the dataset error is this low")
        ->capture_default_str();
    train_cmd->add_option("--seed", tr.config.seed, "Weight initialisation seed")->capture_default_str();
    train_cmd->add_option("--init-range", tr.init_range, "LO,HI for initial weights")->capture_default_str();
    train_cmd->add_option("--scheme", tr.scheme, "per_sample or full_batch")
        ->check(CLI::IsMember({"per_sample", "full_batch"}))
        ->capture_default_str();

    GradcheckArgs gc;
    auto* gc_cmd = app.add_subcommand("gradcheck", "Compare backprop against finite differences");
    gc_cmd->add_option("--net", gc.net, "Network JSON file")->required();
    gc_cmd->add_option("--data", gc.data, "Samples CSV")->required();
    gc_cmd->add_option("--epsilon", gc.epsilon, "Finite-difference step")->capture_default_str();

    auto* ex_cmd = app.add_subcommand("exercise", "Run the built-in exercises");
    ex_cmd->require_subcommand(1);
    Ex31Args ex31;
    auto* ex31_cmd = ex_cmd->add_subcommand("ex31", "Hand-weighted four-neuron network");
    ex31_cmd->add_option("--variant", ex31.variant, "all-ones, swap, double or and-or")
        ->required()
        ->check(CLI::IsMember({"all-ones", "swap", "double", "and-or"}));
    ex31_cmd->add_option("--input", ex31.input, "Two comma-separated inputs")->required();
    std::uint64_t ex41_seed = TrainConfig{}.seed;
    auto* ex41_cmd = ex_cmd->add_subcommand("ex41", "Train the 3-2-3 single-sample task");
    ex41_cmd->add_option("--seed", ex41_seed, "Weight initialisation seed")->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }

    try {
        if (*eval_cmd) return cmd_eval(eval, out);
        if (*train_cmd) return cmd_train(std::move(tr), out);
        if (*gc_cmd) return cmd_gradcheck(gc, out);
        if (*ex31_cmd) return cmd_ex31(ex31, out);
        if (*ex41_cmd) return cmd_ex41(ex41_seed, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIoOrParse;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kIoOrParse;
    } catch (const Error& e) {
        err << "invalid input: " << e.what() << '\n';
        return kValidation;
    }
    return kUsage;
}

}  // namespace ffnn::cli
