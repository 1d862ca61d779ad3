#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden.hpp"
#include "rgpert/cli.hpp"
#include "rgpert/verify.hpp"

using namespace rgpert;
namespace fs = std::filesystem;

namespace {

struct Run {
	int rc;
	std::string out, err;
};

Run cli(const std::vector<std::string>& args)
{
	std::ostringstream out, err;
	const int rc = run_cli(args, out, err);
	return {rc, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name)
{
	const fs::path dir = fs::temp_directory_path() / "rgpert-test-cli" / name;
	fs::remove_all(dir);
	fs::create_directories(dir);
	return dir;
}

void write_file(const fs::path& p, const std::string& text)
{
	std::ofstream f(p, std::ios::binary);
	f << text;
}

const std::vector<std::string> sim_files{"direct.csv", "rg_polar.csv", "reconstructed.csv",
                                         "direct.svg", "rg_polar.svg", "overlay.svg"};

} // namespace

TEST_CASE("expand machine output re-parses to the same table")
{
	const Run r = cli({"expand", "--builtin", "ex_cd", "--order", "3", "--format", "machine"});
	REQUIRE(r.rc == exit_ok);
	const SecularTable back = table_from_json(nlohmann::json::parse(r.out));
	CHECK(back.components == golden::builtin_table("ex_cd", 3).components);
}

TEST_CASE("builtin output is deterministic")
{
	for (const std::string cmd : {"expand", "rg", "verify"}) {
		INFO(cmd);
		const Run a = cli({cmd, "--builtin", "ex_oscillators", "--order", "3"});
		const Run b = cli({cmd, "--builtin", "ex_oscillators", "--order", "3"});
		CHECK(a.rc == exit_ok);
		CHECK(a.out == b.out);
		CHECK_FALSE(a.out.empty());
	}
	const Run a = cli({"verify", "--random", "nilpotent", "--seed", "7"});
	CHECK(a.rc == exit_ok);
	CHECK(a.out == cli({"verify", "--random", "nilpotent", "--seed", "7"}).out);
}

TEST_CASE("text output")
{
	const fs::path dir = fresh_dir("text");
	const fs::path spec = dir / "zero.json";
	write_file(spec, R"J({"class": "semisimple", "linear_part": [1, -1], "V": ["0", "0"], "order": 3})J");
	const Run zero = cli({"expand", "--spec", spec.string()});
	REQUIRE(zero.rc == exit_ok);
	CHECK(zero.out.find("eps") == std::string::npos);

	const Run third = cli({"rg", "--builtin", "ex_third"});
	REQUIRE(third.rc == exit_ok);
	CHECK(third.out.find("d^3") != std::string::npos);
	CHECK(third.out.find("## renormalized expansion") != std::string::npos);

	const Run cd = cli({"rg", "--builtin", "ex_cd", "--order", "4", "--polar", "1:2"});
	REQUIRE(cd.rc == exit_ok);
	CHECK(cd.out.find("## polar form") != std::string::npos);
	CHECK(cd.out.find("dR/dt = 1/3*eps^4*R^4*sin(theta)") != std::string::npos);

	const Run diff = cli({"verify", "--builtin", "ex_difference"});
	CHECK(diff.rc == exit_ok);
	CHECK(diff.out.find("closed_form") != std::string::npos);
}

TEST_CASE("exit codes")
{
	CHECK(cli({"--help"}).rc == exit_ok);
	CHECK(cli({}).rc == exit_spec_error);
	CHECK(cli({"expand"}).rc == exit_spec_error);
	CHECK(cli({"expand", "--builtin", "nope"}).rc == exit_spec_error);
	CHECK(cli({"expand", "--builtin", "ex_cd", "--random", "scalar"}).rc == exit_spec_error);
	CHECK(cli({"expand", "--builtin", "ex_cd", "--format", "yaml"}).rc == exit_spec_error);
	CHECK(cli({"rg", "--builtin", "ex_cd", "--polar", "1:1"}).rc == exit_polar_pairing);

	const fs::path dir = fresh_dir("codes");
	write_file(dir / "broken.json", "{\"class\": ");
	CHECK(cli({"expand", "--spec", (dir / "broken.json").string()}).rc == exit_spec_error);
	write_file(dir / "bad.json", R"J({"class": "semisimple", "linear_part": [1], "V": ["A7"], "order": 2})J");
	CHECK(cli({"expand", "--spec", (dir / "bad.json").string()}).rc == exit_spec_error);

	const SecularTable table = golden::builtin_table("ex_cd", 3);
	write_file(dir / "good_table.json", table_to_json(table).dump());
	write_file(dir / "bad_table.json", table_to_json(corrupt_table(table)).dump());
	CHECK(cli({"verify", "--table", (dir / "good_table.json").string()}).rc == exit_ok);
	const Run bad = cli({"verify", "--table", (dir / "bad_table.json").string()});
	CHECK(bad.rc == exit_check_failed);
	CHECK(bad.out.find("FAIL") != std::string::npos);

	const Run blow = cli({"simulate", "--builtin", "ex_cd", "--eps", "50", "--t-end", "100", "--out", dir.string()});
	CHECK(blow.rc == exit_numeric_overflow);
}

TEST_CASE("simulate writes its files")
{
	const fs::path dir = fresh_dir("sim");
	const Run r = cli({"simulate", "--builtin", "ex_cd", "--t-end", "5", "--out", dir.string()});
	REQUIRE(r.rc == exit_ok);
	CHECK(r.out.find("y(0) = -0.462366") != std::string::npos);
	for (const auto& f : sim_files) {
		INFO(f);
		CHECK(fs::exists(dir / f));
		CHECK(fs::file_size(dir / f) > 0);
	}
}

TEST_CASE("output directory from the environment")
{
	const fs::path env_dir = fresh_dir("env");
	const fs::path flag_dir = fresh_dir("flag");
	setenv(output_dir_env, env_dir.c_str(), 1);
	CHECK(cli({"simulate", "--builtin", "ex_cd", "--t-end", "1"}).rc == exit_ok);
	CHECK(fs::exists(env_dir / "overlay.svg"));
	// --out wins over the environment
	CHECK(cli({"simulate", "--builtin", "ex_cd", "--t-end", "1", "--out", flag_dir.string()}).rc == exit_ok);
	CHECK(fs::exists(flag_dir / "overlay.svg"));
	unsetenv(output_dir_env);
}
