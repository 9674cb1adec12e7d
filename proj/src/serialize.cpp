#include "ila/serialize.hpp"

namespace ila {

namespace {

nlohmann::json basis_rows(const ExactMatrix& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < rep.cols(); ++j) row.push_back(rep.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

nlohmann::json scalar_strings(const std::vector<Scalar>& xs) {
    nlohmann::json out = nlohmann::json::array();
    for (const Scalar& x : xs) out.push_back(x.str());
    return out;
}

nlohmann::json label_strings(const LabelList& ls) {
    nlohmann::json out = nlohmann::json::array();
    for (const Label& l : ls) out.push_back(l.str());
    return out;
}

nlohmann::json space_json(const IndexedVectorSpace& v) {
    return {{"labels", label_strings(v.labels())},
            {"basis", basis_rows(v.rep())},
            {"offset", nullptr},
            {"void", false}};
}

nlohmann::json space_json(const IndexedAffineSpace& a) {
    if (a.is_void())
        return {{"labels", label_strings(a.labels())},
                {"basis", nlohmann::json::array()},
                {"offset", nullptr},
                {"void", true}};
    return {{"labels", label_strings(a.labels())},
            {"basis", basis_rows(a.translate().rep())},
            {"offset", scalar_strings(a.offset())},
            {"void", false}};
}

}  // namespace ila
