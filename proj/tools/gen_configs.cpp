// Regenerates the committed example config for every preset.
// Usage: gen_configs [output-dir]   (default: configs)

#include <cstdio>
#include <filesystem>
#include <string>

#include "omsync/config_io.hpp"
#include "omsync/csv.hpp"
#include "omsync/scenario.hpp"

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "configs";
    std::filesystem::create_directories(dir);
    for (const auto& name : omsync::preset_names()) {
        const std::string path = dir + "/" + name + ".json";
        omsync::write_text_file(path, omsync::serialize_config(omsync::preset(name)));
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}
