#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qkdlink/harness/loop.hpp"
#include "qkdlink/kms/http_api.hpp"
#include "qkdlink/scenario/render.hpp"

namespace {

using namespace qkdlink;

std::atomic<bool> g_stop{false};

scenario::ScenarioConfig load_config(const std::string& config_path,
                                     std::uint64_t seed,
                                     const std::string& out_dir) {
    auto cfg = config_path.empty() ? scenario::ScenarioConfig::defaults()
                                   : scenario::ScenarioConfig::load(config_path);
    if (seed != 0) cfg.run.seed = seed;
    if (!out_dir.empty()) cfg.run.out_dir = out_dir;
    if (const char* env = std::getenv("QKDLINK_OUT_DIR"))
        cfg.run.out_dir = env;
    return cfg;
}

int cmd_model(const scenario::ScenarioConfig& cfg) {
    scenario::render_model_outputs(cfg, cfg.run.out_dir);
    scenario::write_model_csv(cfg, std::cout);
    return 0;
}

int cmd_pool(const scenario::ScenarioConfig& cfg, bool with_failure) {
    const auto timeline = scenario::run_pool_study(cfg, with_failure);
    scenario::render_pool_outputs(timeline, cfg.run.out_dir);
    std::cout << "steps=" << timeline.entries.size()
              << " k_lead=" << timeline.k_lead;
    if (timeline.k_fail) std::cout << " k_fail=" << *timeline.k_fail;
    if (timeline.k_exhaust) std::cout << " k_exhaust=" << *timeline.k_exhaust;
    std::cout << '\n';
    return 0;
}

int cmd_lead(const scenario::ScenarioConfig& cfg) {
    const auto result = scenario::run_lead_sweep(cfg);
    scenario::render_lead_outputs(cfg, result, cfg.run.out_dir);
    scenario::write_lead_csv(result, std::cout);
    return 0;
}

int cmd_fail(const scenario::ScenarioConfig& cfg) {
    const auto result = scenario::run_fail_sweep(cfg);
    scenario::render_fail_outputs(cfg, result, cfg.run.out_dir);
    scenario::write_fail_csv(result, std::cout);
    return 0;
}

int cmd_run(const scenario::ScenarioConfig& cfg) {
    const auto& uc = cfg.use_case;
    uc.validate();

    kms::KmsPair pair(mix_seed(cfg.run.seed, 100), mix_seed(cfg.run.seed, 101));
    // pre-charge the pool to cover the whole run plus margin
    const auto per_cycle = pool::demand_bits_per_period(uc);
    pair.a.credit_pool(per_cycle * (cfg.run.cycles + 16));

    harness::TcpListener listener("127.0.0.1", 0);
    const std::vector<std::uint8_t> auth_key(32, 0x42);
    std::unique_ptr<harness::TcpChannel> channel_b;
    std::thread acceptor([&] { channel_b = listener.accept(auth_key); });
    auto channel_a =
        harness::TcpChannel::connect("127.0.0.1", listener.port(), auth_key);
    acceptor.join();

    kms::LocalKeyService keys_a(pair.a), keys_b(pair.b);
    const auto report =
        harness::run_loop(uc, cfg.run.cycles, *channel_a, *channel_b, keys_a,
                          keys_b, cfg.run.seed);

    std::filesystem::create_directories(cfg.run.out_dir);
    {
        std::ofstream out(std::filesystem::path(cfg.run.out_dir) /
                          "run_report.csv");
        report.write_csv(out);
    }
    {
        std::ofstream out(std::filesystem::path(cfg.run.out_dir) /
                          "run_summary.csv");
        report.write_summary(out);
    }
    report.write_summary(std::cout);
    std::cout << "completed=" << report.completed
              << " exhausted=" << report.exhausted
              << " integrity_failures=" << report.integrity_failures << '\n';
    return report.integrity_failures == 0 ? 0 : 1;
}

int cmd_kms(const scenario::ScenarioConfig& cfg, const std::string& host,
            int port, const std::string& peer_host, int peer_port,
            const std::string& store_dir) {
    kms::KmsServer server(cfg.run.seed,
                          store_dir.empty() ? kms::KeyStore()
                                            : kms::KeyStore(store_dir));
    std::unique_ptr<kms::HttpPeerLink> peer;
    if (peer_port > 0) {
        peer = std::make_unique<kms::HttpPeerLink>(peer_host, peer_port);
        server.connect_peer(peer.get());
    }
    kms::KmsHttpServer http(server);
    const int bound = http.start(host, port);
    if (bound < 0) {
        std::cerr << "failed to bind " << host << ":" << port << '\n';
        return 1;
    }
    std::cout << "kms listening on " << host << ":" << bound << '\n';
    std::signal(SIGINT, [](int) { g_stop = true; });
    std::signal(SIGTERM, [](int) { g_stop = true; });
    while (!g_stop)
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    http.stop();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QKD-secured reactor telemetry toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "scenario configuration file");
    app.add_option("--seed", seed, "override the master seed");
    app.add_option("--out", out_dir, "output directory");

    auto* model = app.add_subcommand("model", "SKR/QBER curves");
    auto* pool = app.add_subcommand("pool", "key-pool timeline");
    bool with_failure = false;
    pool->add_flag("--failure", with_failure,
                   "inject a key-distribution failure");
    auto* lead = app.add_subcommand("lead", "minimum lead-time sweep");
    auto* fail = app.add_subcommand("fail", "post-failure uptime sweep");
    auto* run = app.add_subcommand("run", "live loopback harness run");
    auto* kms = app.add_subcommand("kms", "start a key-delivery server");
    std::string host = "127.0.0.1", peer_host = "127.0.0.1", store_dir;
    int port = 8800, peer_port = 0;
    kms->add_option("--host", host, "listen address");
    kms->add_option("--port", port, "listen port");
    kms->add_option("--peer-host", peer_host, "peer address");
    kms->add_option("--peer-port", peer_port, "peer port (0 = standalone)");
    kms->add_option("--store", store_dir, "persistent ledger directory");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = load_config(config_path, seed, out_dir);
        if (model->parsed()) return cmd_model(cfg);
        if (pool->parsed()) return cmd_pool(cfg, with_failure);
        if (lead->parsed()) return cmd_lead(cfg);
        if (fail->parsed()) return cmd_fail(cfg);
        if (run->parsed()) return cmd_run(cfg);
        if (kms->parsed())
            return cmd_kms(cfg, host, port, peer_host, peer_port, store_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
