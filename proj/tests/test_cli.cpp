#include <doctest.h>

#include <symchain/cli.hpp>

#include <json.hpp>

#include "testkit.hpp"

#include <fstream>
#include <sstream>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = symchain::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return testkit::fixture(name).string(); }

std::string scratch(const char* name) { return (std::filesystem::path(SYMCHAIN_SCRATCH_DIR) / name).string(); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("analyze exit codes") {
    const Run ok = run({"analyze", fx("example2.model")});
    CHECK(ok.code == symchain::cli::kOk);
    CHECK(contains(ok.out, "det(F^(4)) = 16"));
    CHECK(contains(ok.out, "4 | z | 2*z | truncated-null-vector"));

    const Run free = run({"analyze", fx("free_particle.model")});
    CHECK(free.code == 0);
    CHECK(contains(free.out, "truncations: none"));

    const Run capped = run({"analyze", "--max-level", "2", fx("example2.model")});
    CHECK(capped.code == symchain::cli::kMaxLevel);
    CHECK(contains(capped.out, "max-level-reached"));

    const Run exhausted = run({"analyze", "--no-truncation", fx("example2.model")});
    CHECK(exhausted.code == symchain::cli::kExhausted);
    CHECK(contains(exhausted.out, "only in oracle: z"));
    CHECK(contains(exhausted.err, "warning"));
}

TEST_CASE("input errors exit 1") {
    CHECK(run({"analyze", scratch("does-not-exist.model")}).code == 1);
    CHECK(run({"analyze", "--max-level", "0", fx("example2.model")}).code == 1);
    CHECK(run({"analyze", "--truncate", "sideways", fx("example2.model")}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);

    const std::string bad = scratch("bad.model");
    std::ofstream(bad) << "model bad\nzeta q p\nc p 0\nH p^^2\n";
    const Run r = run({"analyze", bad});
    CHECK(r.code == 1);
    CHECK(contains(r.err, "line 4"));
}

TEST_CASE("compare") {
    const Run ex = run({"compare", fx("example2.model")});
    CHECK(ex.code == 0);
    CHECK(contains(ex.out, "verdict: equal"));
    const Run sw = run({"compare", fx("schwinger_n3.model")});
    CHECK(sw.code == 0);
    CHECK(contains(sw.out, "12 chain vs 12 oracle"));

    // H altered: the verdict decides the exit status, deterministically.
    const std::string path = scratch("corrupt.model");
    std::ofstream(path) << "model corrupt\nvars x y z\nL xdot*ydot - z*(x + y) - z^2\n";
    const Run a = run({"compare", path});
    const Run b = run({"compare", path});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK((a.code == 0) == contains(a.out, "verdict: equal"));

    const Run trunc_off = run({"compare", "--no-truncation", fx("example2.model")});
    CHECK(trunc_off.code == symchain::cli::kSpansDiffer);
}

TEST_CASE("tree output is complete and deterministic") {
    const Run a = run({"compare", "--format", "tree", fx("example2.model")});
    const Run b = run({"compare", "--format", "tree", fx("example2.model")});
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    for (const char* key : {"model", "zeta", "xi", "constraints", "eigenvectors", "truncations", "termination",
                            "generic", "fingerprint", "warnings", "comparison"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["constraints"].size() == 4);
    CHECK(j["constraints"][3]["raw"] == "2*z");
    CHECK(j["termination"]["determinant"] == "16");
    CHECK(j["truncations"] == nlohmann::json::array({3}));
    CHECK(j["comparison"]["verdict"] == "equal");
}

TEST_CASE("lattice command") {
    const std::string out = scratch("schwinger_n3.model");
    const Run w = run({"lattice", "schwinger", "--sites", "3", "--spacing", "1", "--out", out});
    CHECK(w.code == 0);
    CHECK(contains(w.out, "18 coordinates"));
    std::ifstream written(out), golden(fx("schwinger_n3.model"));
    std::stringstream ws, gs;
    ws << written.rdbuf();
    gs << golden.rdbuf();
    CHECK(ws.str() == gs.str());

    CHECK(run({"lattice", "schwinger", "--sites", "4", "--scheme", "central"}).code == 1);
    CHECK(run({"lattice", "maxwell", "--sites", "3"}).code == 1);
    CHECK(run({"lattice", "schwinger", "--spacing", "-1"}).code == 1);

    const Run five = run({"lattice", "schwinger", "--sites", "5", "--analyze"});
    CHECK(five.code == 0);
    CHECK(contains(five.out, "20 chain vs 20 oracle"));
    CHECK(contains(five.out, "site form: pi1 @ site 5"));
}
