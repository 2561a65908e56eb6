#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "risflow/config.hpp"

using namespace risflow;

TEST_CASE("empty config yields every default") {
    const auto c = parse_config_text("");
    CHECK(c.counts.bs == 7);
    CHECK(c.counts.ris == 7);
    CHECK(c.counts.vr == 7);
    CHECK(c.channel.n_elements == 16);
    CHECK(c.channel.bandwidth_w == 3e9);
    CHECK(c.channel.freq_f == 1e12);
    CHECK(c.channel.k_abs == 0.0016);
    CHECK(c.queue_l_gbit == 10.0);
    CHECK(c.tau_s == 0.5);
    CHECK(c.channel.p_bs == 10.0);
    CHECK(c.channel.p_ris == 1.0);
    CHECK(c.channel.temp_t0 == 300.0);
    CHECK(c.chunk_gbit == 0.5);
    CHECK(c.k_pddt == 5);
    CHECK(c.k_sddt == 1);
    CHECK(c.range_m == 20.0);
    CHECK(c.d_sweep == std::vector<int>{20, 50, 100, 200, 300, 500});
    CHECK(c.replications == 10);
    CHECK(c.dynamic.epoch_minutes == 30.0);
    CHECK(c.dynamic.d_fixed == 300);
}

TEST_CASE("values, comments and sections are read") {
    const auto c = parse_config_text(
        "# comment\n"
        "[traffic]\n"
        "queue_l_gbit = 12.5   ; trailing comment\n"
        "k_pddt=3\n"
        "\n"
        "[static]\n"
        "d_sweep = 10, 20 ,40\n"
        "nested_demands = true\n"
        "[run]\n"
        "seed = 18446744073709551615\n");
    CHECK(c.queue_l_gbit == 12.5);
    CHECK(c.k_pddt == 3);
    CHECK(c.d_sweep == std::vector<int>{10, 20, 40});
    CHECK(c.nested_demands);
    CHECK(c.seed == 18446744073709551615ULL);
}

TEST_CASE("errors carry the offending line") {
    auto line_of = [](const std::string& text) {
        try {
            parse_config_text(text, "cfg");
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("[traffic]\nqueue_l_gbit = -1\n") == 2);
    CHECK(line_of("[traffic]\nbogus = 1\n") == 2);
    CHECK(line_of("\n\n[nowhere]\n") == 3);
    CHECK(line_of("queue_l_gbit = 1\n") == 1);
    CHECK(line_of("[traffic]\nqueue_l_gbit 1\n") == 2);
    CHECK(line_of("[traffic]\nk_pddt = 2.5\n") == 2);
    CHECK(line_of("[traffic]\nk_pddt = 2\nk_pddt = 3\n") == 3);
    CHECK(line_of("[channel]\noptimal_phase = false\n") == 2);
    CHECK(line_of("[static]\nci_level = 1.5\n") == 2);
    try {
        parse_config_text("[traffic]\nqueue_l_gbit = -1\n", "my.ini");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("my.ini:2:") == 0);
    }
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/risflow.ini"), ConfigError);
}

TEST_CASE("effective config echo round-trips exactly") {
    ExperimentConfig c;
    c.queue_l_gbit = 0.1 + 0.2;  // not representable in few digits
    c.channel.k_abs = 1.0 / 3.0;
    c.d_sweep = {3, 7};
    c.seed = 123456789012345ULL;
    c.fixed_topology = true;
    const auto text = format_config(c);
    const auto back = parse_config_text(text);
    CHECK(format_config(back) == text);
    CHECK(back.queue_l_gbit == c.queue_l_gbit);
    CHECK(back.channel.k_abs == c.channel.k_abs);
    CHECK(back.d_sweep == c.d_sweep);
    CHECK(back.seed == c.seed);
    CHECK(back.fixed_topology);

    const auto path = std::filesystem::temp_directory_path() / "risflow_roundtrip.ini";
    std::ofstream(path) << text;
    CHECK(format_config(parse_config(path)) == text);
    std::filesystem::remove(path);
}
