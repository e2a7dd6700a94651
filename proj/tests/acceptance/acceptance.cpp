// One line per acceptance criterion; exit status 1 if any fails.

#include "germ/selftest.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char **argv)
{
    germ::SelftestOptions opts;
    opts.seed = 1;
    opts.precision = 256;
    if (argc > 1)
        opts.corpus_path = argv[1];

    int failed = 0;
    opts.on_result = [&](const germ::CriterionResult &r) {
        std::printf("[%s] %2d %-24s %8.3fs / %4.0fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.time_limit, r.detail.c_str());
        for (const std::string &f : r.failures)
            std::printf("       - %s\n", f.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    };
    germ::run_selftest(opts);
    std::printf("%d/%d criteria passed\n", germ::kCriteria - failed, germ::kCriteria);
    return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
