// Acceptance gate: one exact, zero-tolerance check per criterion, each
// printed as a single pass/fail line. Exits nonzero if any criterion fails.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "locsys/verify.hpp"

using namespace locsys;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << what
              << "\n";
    if (!ok) ++failures;
}

void run(int number, const std::string& what, const std::string& suite,
         std::uint64_t seed, int trials, int size) {
    SuiteReport r = run_suite(suite, seed, trials, size);
    report(number, what, r.ok());
}

bool corpus_roundtrip(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    if (files.empty()) return false;
    std::sort(files.begin(), files.end());
    for (auto& p : files) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        Document d = decode(text);
        if (encode(d) != text) return false;        // bit-exact re-encoding
        if (!(decode(encode(d)) == d)) return false;  // value round trip
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::string corpus_dir = argc > 1 ? argv[1] : "corpus";

    run(1, "pushout-product axiom on generators (F2, F3, Q; m,n in 0..2)",
        "pushout-product-generators", 1, 1, 0);
    run(2, "dim Z_0([V,W]) = chain-map solution dimension (50 pairs, F5)",
        "mapping-cycles", 2, 50, 3);
    run(3, "H(tot(const(V,D))) = H(V) (25 random V, D in 1..3)", "tot-const", 3, 25, 3);
    run(4, "skeletization contract (20 random groupoids)", "skeletization", 4, 20, 6);
    run(5, "Kan adjunction triangle identities (30 random instances)",
        "triangle-identities", 5, 30, 4);
    run(6, "induced index formula and section iso (C2<=C4, C3<=S3 over F5)",
        "induced-index", 6, 5, 2);
    run(7, "Frobenius reciprocity and projection formula (25 instances)",
        "projection-formula", 7, 25, 3);
    run(8, "Beck-Chevalley comparisons (15 instances each)", "beck-chevalley", 8, 15, 3);
    run(9, "homotopical external tensor and fixed-base pushout-products (25)",
        "external-tensor-homotopical", 9, 25, 2);
    run(10, "external hom adjunction by brute force over F2",
        "external-hom-adjunction", 10, 5, 1);
    run(11, "homotopy quotient squares for C2, C3 and their tensors",
        "homotopy-quotient", 11, 2, 2);
    run(12, "coproduct distributivity and colimit preservation (15 instances)",
        "coproduct-distributivity", 12, 15, 2);
    run(13, "pull/push through products and adjunct compatibility (15 instances)",
        "product-pushpull", 13, 15, 2);
    run(14, "set-level pushout-product fiber census (100 random maps)",
        "set-pushout-product", 14, 100, 6);

    bool rt = false;
    try {
        rt = corpus_roundtrip(corpus_dir);
    } catch (const Error& e) {
        std::cerr << "corpus error: " << e.what() << "\n";
    }
    report(15, "codec round trip on the document corpus, bit-exact", rt);

    if (failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << failures << " acceptance criteria failed\n";
    return 1;
}
