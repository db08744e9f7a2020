#include "cucgarch/csv.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

using namespace cucgarch;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/cucgarch_test_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv: header and date column are detected") {
    TempFile f("hdr.csv",
               "date,a,b\n"
               "2001-01-02,0.1,-0.2\n"
               "2001-01-03,0.3,0.4\n"
               "2001-01-04,-0.5,0.6\n"
               "2001-01-05,0.7,-0.8\n");
    const ReturnPanel p = load_returns(f.path);
    CHECK(p.rows() == 4);
    CHECK(p.cols() == 2);
    CHECK(p.labels == std::vector<std::string>{"a", "b"});
    CHECK(p.timestamps.size() == 4);
    CHECK(p.timestamps.front() == "2001-01-02");
    CHECK(p.values(0, 1) == -0.2);
}

TEST_CASE("csv: bare numeric file gets default labels") {
    TempFile f("bare.csv", "1,2\n3,4\n5,6\n7,8\n");
    const ReturnPanel p = load_returns(f.path);
    CHECK(p.rows() == 4);
    CHECK(p.labels == std::vector<std::string>{"col_1", "col_2"});
    CHECK(p.timestamps.empty());
}

TEST_CASE("csv: errors name the offending cell") {
    TempFile ragged("ragged.csv", "1,2\n3,4\n5\n6,7\n");
    CHECK_THROWS_WITH_AS(load_returns(ragged.path),
                         doctest::Contains("ragged row 3"), DataError);

    TempFile bad("bad.csv", "1,2\n3,oops\n5,6\n7,8\n");
    CHECK_THROWS_WITH_AS(load_returns(bad.path),
                         doctest::Contains("row 2"), DataError);

    CHECK_THROWS_AS(load_returns("/tmp/definitely_not_there.csv"), DataError);

    // T >= d + 2 required
    TempFile tiny("tiny.csv", "1,2\n3,4\n5,6\n");
    CHECK_THROWS_WITH_AS(load_returns(tiny.path),
                         doctest::Contains("too few rows"), DataError);
}

TEST_CASE("csv: save/load roundtrip is lossless") {
    ReturnPanel p;
    p.values.resize(5, 2);
    p.values << 0.123456789012345678, -1.5e-7, 3.25, 4.0, -0.001, 2.0, 7.5, -8.25,
        1e-15, 0.5;
    p.labels = {"x", "y"};
    p.timestamps = {"2001-01-01", "2001-01-02", "2001-01-03", "2001-01-04", "2001-01-05"};

    const std::string path = "/tmp/cucgarch_test_roundtrip.csv";
    save_panel(p, path);
    const ReturnPanel q = load_returns(path);
    std::remove(path.c_str());

    CHECK(q.labels == p.labels);
    CHECK(q.timestamps == p.timestamps);
    CHECK((q.values - p.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv: panel validation rejects non-finite entries") {
    ReturnPanel p;
    p.values = Matrix::Zero(6, 2);
    p.labels = {"a", "b"};
    p.values(3, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(p.validate(), DataError);
}
