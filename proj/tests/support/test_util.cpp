#include "support/test_util.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tvgc::testing {
namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out.push_back(c);
        }
    }
    out += "'";
    return out;
}

} // namespace

std::filesystem::path fixtures_dir() { return TVGC_FIXTURES_DIR; }
std::filesystem::path golden_dir() { return TVGC_GOLDEN_DIR; }
std::filesystem::path cli_path() { return TVGC_CLI_PATH; }

TempDir::TempDir(const std::string& label) {
    static std::atomic<int> counter{0};
    const int id = counter.fetch_add(1);
    path_ = std::filesystem::temp_directory_path() /
            ("tvgc_test_" + label + "_" + std::to_string(::getpid()) + "_" + std::to_string(id));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

CliResult run_cli(const std::vector<std::string>& args, const std::vector<std::string>& env) {
    const TempDir scratch("cli_io");
    const std::filesystem::path out_path = scratch / "stdout";
    const std::filesystem::path err_path = scratch / "stderr";

    std::ostringstream command;
    for (const std::string& assignment : env) command << assignment << ' ';
    command << shell_quote(cli_path().string());
    for (const std::string& arg : args) command << ' ' << shell_quote(arg);
    command << " > " << shell_quote(out_path.string()) << " 2> "
            << shell_quote(err_path.string());

    const int status = std::system(command.str().c_str());
    CliResult result;
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    }
    result.output = read_file(out_path);
    result.errors = read_file(err_path);
    return result;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

AlignedDataset white_noise_dataset(std::size_t length, std::uint64_t seed, double returns_ar,
                                   double attention_ar) {
    RngStream stream(seed, 0);
    AlignedDataset data;
    data.country = "test";
    const Date epoch = Date::from_ymd(2021, 1, 1);
    double r = 0.0;
    double a = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
        r = returns_ar * r + stream.normal();
        a = attention_ar * a + stream.normal();
        data.dates.push_back(epoch + static_cast<std::int32_t>(t));
        data.returns.push_back(r);
        data.attention.push_back(a);
    }
    return data;
}

} // namespace tvgc::testing
