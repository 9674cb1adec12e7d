#include <chrono>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "ila/terminations.hpp"
#include "ila/theorems.hpp"

using namespace ila;

namespace {

// Connected graph of positive resistors with series sources on every internal
// edge; such a network is regular for any port placement, so both solve paths
// always have work to do.
Multiport random_resistive_multiport(std::uint64_t seed, int extra_edges, int ports) {
    std::mt19937_64 rng(seed);
    const int nv = 4 + extra_edges / 2;
    OrientedGraph g;
    for (int k = 0; k < nv; ++k) g.add_vertex("v" + std::to_string(k));

    LabelList internal;
    int edge_id = 0;
    const auto vertex = [&] { return static_cast<int>(rng() % static_cast<unsigned>(nv)); };
    const auto add_internal = [&](int a, int b) {
        const Label l("e" + std::to_string(edge_id++));
        g.add_edge(l, "v" + std::to_string(a), "v" + std::to_string(b));
        internal.push_back(l);
    };
    for (int k = 0; k + 1 < nv; ++k) add_internal(k, k + 1);
    for (int k = 0; k < extra_edges; ++k) {
        const int a = vertex();
        int b = vertex();
        if (a == b) b = (a + 1) % nv;
        add_internal(a, b);
    }
    LabelList port_labels;
    for (int j = 0; j < ports; ++j) {
        const int a = vertex();
        int b = vertex();
        if (a == b) b = (a + 1) % nv;
        const Label l("p" + std::to_string(j));
        g.add_edge(l, "v" + std::to_string(a), "v" + std::to_string(b));
        port_labels.push_back(l);
    }

    const FieldMode mode = FieldMode::Rational;
    const std::size_t m = internal.size();
    ExactMatrix rows(mode, m, 2 * m + 1);
    for (std::size_t j = 0; j < m; ++j) {
        rows.at(j, j) = Scalar::one(mode);
        rows.at(j, m + j) = -Scalar::integer(mode, 1 + static_cast<long>(rng() % 9));
        rows.at(j, 2 * m) = Scalar::integer(mode, static_cast<long>(rng() % 11) - 5);
    }

    Multiport n;
    n.graph = std::move(g);
    n.ports = std::move(port_labels);
    n.device = DeviceCharacteristic::make(mode, std::move(internal), std::move(rows));
    return n;
}

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timing comparison: serial vs parallel solve paths"};
    int ports = 3, extra_edges = 10, trials = 60, max_size = 4;
    std::uint64_t seed = 42;
    app.add_option("--ports", ports, "number of port edges");
    app.add_option("--edges", extra_edges, "extra internal edges beyond the spanning chain");
    app.add_option("--trials", trials, "identity-suite trials");
    app.add_option("--max-size", max_size, "identity-suite index-set bound");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    const Multiport n = random_resistive_multiport(seed, extra_edges, ports);
    std::cout << "network: " << n.graph.vertices.size() << " vertices, "
              << n.graph.edges.size() << " edges, " << n.ports.size() << " ports\n";

    PortBehaviour serial_out, parallel_out;
    const double t_serial =
        time_ms([&] { serial_out = thevenin_norton(n, Parallelism::Serial); });
    const double t_parallel =
        time_ms([&] { parallel_out = thevenin_norton(n, Parallelism::Auto); });
    const bool behaviours_agree = serial_out.affine == parallel_out.affine;
    std::cout << "thevenin-norton   serial " << t_serial << " ms   parallel " << t_parallel
              << " ms   agree: " << (behaviours_agree ? "yes" : "NO") << "\n";

    SuiteResult suite_serial, suite_parallel;
    const double u_serial = time_ms(
        [&] { suite_serial = run_idt_suite(FieldMode::Rational, trials, seed, max_size, false); });
    const double u_parallel = time_ms(
        [&] { suite_parallel = run_idt_suite(FieldMode::Rational, trials, seed, max_size, true); });
    std::cout << "idt suite (" << trials << ")  serial " << u_serial << " ms   parallel "
              << u_parallel << " ms   clean: "
              << (suite_serial.ok() && suite_parallel.ok() ? "yes" : "NO") << "\n";

    return behaviours_agree && suite_serial.ok() && suite_parallel.ok() ? 0 : 1;
}
