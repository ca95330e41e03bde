#include "cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdw/config.hpp"
#include "cdw/errors.hpp"
#include "cdw/lab.hpp"

namespace cdw::cli {

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Charge-density-wave phase dynamics lab", "cdw-lab"};
    std::string config_path;
    std::string output;
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;
    app.add_option("config", config_path, "Config file (key = value lines)")->required();
    auto* output_opt = app.add_option("--output,-o", output, "CSV artifact path (overrides `output`)");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized minimizer restarts");
    app.add_option("--set", overrides, "Override a config entry, key=value")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return 2;
    }

    lab::RunConfig cfg;
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ConfigError(0, "cannot read config file '" + config_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        cfg = lab::parse_config(text.str());
        for (const auto& o : overrides) lab::apply_override(cfg, o);
        if (*output_opt) cfg.output_path = output;
        if (*seed_opt) cfg.seed = seed;
    } catch (const ConfigError& e) {
        err << "error: " << e.code() << ": " << e.what() << '\n';
        return 2;
    }
    return lab::run(cfg, err);
}

}  // namespace cdw::cli
