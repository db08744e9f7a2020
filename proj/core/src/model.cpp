#include "cucgarch/model.hpp"

#include <json.hpp>

#include <fstream>

namespace cucgarch {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

json matrix_to_json(const Matrix& m) {  // row-major flat array
    json arr = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
    return arr;
}

Matrix matrix_from_json(const json& arr, Eigen::Index rows, Eigen::Index cols) {
    if (static_cast<Eigen::Index>(arr.size()) != rows * cols)
        throw DataError("model file: matrix entry count mismatch");
    Matrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = arr[k++].get<double>();
    return m;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Vector vector_from_json(const json& arr) {
    Vector v(static_cast<Eigen::Index>(arr.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = arr[i].get<double>();
    return v;
}

}  // namespace

Matrix CucModel::loading() const {
    return whiten.loading() * A_hat;
}

void CucModel::validate() const {
    whiten.validate();
    const int d = dim();
    if (whiten.eigvecs.rows() != d)
        throw DimensionError("whitening transform and A_hat dimensions differ");
    if (static_cast<int>(components.size()) != d)
        throw DimensionError("component count does not match dimension");
    const double err =
        (A_hat.transpose() * A_hat - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > 1e-10) throw DataError("A_hat is not orthogonal");
    for (int j = 0; j < d; ++j) components[static_cast<std::size_t>(j)].validate(d, j);
    if (estimator != "qmle" && estimator != "lade")
        throw DataError("unknown estimator tag: " + estimator);
}

void save_model(const CucModel& model, const std::string& path) {
    model.validate();
    const int d = model.dim();
    json components = json::array();
    for (int j = 0; j < d; ++j) {
        const auto& p = model.components[static_cast<std::size_t>(j)];
        json active = json::array();
        for (int i : p.active) active.push_back(i + 1);  // 1-based on disk
        components.push_back({{"gamma", p.gamma},
                              {"alpha", vector_to_json(p.alpha)},
                              {"beta", p.beta},
                              {"active", active}});
    }
    json doc = {
        {"schema_version", kSchemaVersion},
        {"mean", vector_to_json(model.whiten.mean)},
        {"eigvecs", matrix_to_json(model.whiten.eigvecs)},
        {"eigvals", vector_to_json(model.whiten.eigvals)},
        {"A_hat", matrix_to_json(model.A_hat)},
        {"components", components},
        {"estimator", model.estimator},
        {"fit",
         {{"n", model.meta.n},
          {"nu", model.meta.nu},
          {"k0", model.meta.k0},
          {"objective", model.meta.psi_value}}},
    };
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    out << doc.dump(2) << "\n";
}

CucModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw DataError("model file parse error: " + std::string(e.what()));
    }
    try {
        if (doc.at("schema_version").get<int>() != kSchemaVersion)
            throw DataError("unsupported model schema version");
        CucModel model;
        model.whiten.mean = vector_from_json(doc.at("mean"));
        const Eigen::Index d = model.whiten.mean.size();
        model.whiten.eigvecs = matrix_from_json(doc.at("eigvecs"), d, d);
        model.whiten.eigvals = vector_from_json(doc.at("eigvals"));
        model.A_hat = matrix_from_json(doc.at("A_hat"), d, d);
        model.estimator = doc.at("estimator").get<std::string>();
        for (const auto& c : doc.at("components")) {
            ExtGarchParams p;
            p.gamma = c.at("gamma").get<double>();
            p.alpha = vector_from_json(c.at("alpha"));
            p.beta = c.at("beta").get<double>();
            for (const auto& i : c.at("active")) p.active.push_back(i.get<int>() - 1);
            model.components.push_back(std::move(p));
        }
        const auto& fit = doc.at("fit");
        model.meta.n = fit.at("n").get<int>();
        model.meta.nu = fit.at("nu").get<int>();
        model.meta.k0 = fit.at("k0").get<int>();
        model.meta.psi_value = fit.at("objective").get<double>();
        model.validate();
        return model;
    } catch (const json::exception& e) {
        throw DataError("model file schema error: " + std::string(e.what()));
    }
}

}  // namespace cucgarch
