#ifndef OCY_CLI_COMMANDS_HPP
#define OCY_CLI_COMMANDS_HPP

#include "ocy/error.hpp"
#include "ocy/ingest.hpp"
#include "ocy/order.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace ocy::cli {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,         // bad flags or flag values
    exit_contract = 2,      // e.g. size mismatch in strict mode
    exit_io = 3,            // unreadable input, unwritable output
    exit_decode = 4,        // undecodable image or malformed manifest
    exit_batch_partial = 5, // batch finished but some rows failed
};

enum class OutputFormat { Json, Csv, Text };

struct LoadedImage {
    ImageId id;
    PixelGrid grid;
};

/// Reads and decodes an image file, hashing its bytes. Throws Error(Io) or
/// a decode error.
LoadedImage load_image(const std::filesystem::path& path);

/// Maps a library error to the exit code it should produce.
int exit_code_for(const Error& e);

struct ManifestRow {
    std::string path_a;
    std::string path_b;
};

/// CSV with header "path_a,path_b". Blank lines are ignored. Throws
/// Error(ManifestMalformed).
std::vector<ManifestRow> parse_manifest(std::string_view text);

/// Entry point shared by the executable and the tests. argv[0] is the
/// program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ocy::cli

#endif
