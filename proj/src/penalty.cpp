#include "nlobs/penalty.hpp"

namespace nlobs {

Field penal_residual(const Field& u, const Field& Iu, const Field& f,
                     const MollifiedObstacles& m, const PenaltyFn& p,
                     const std::vector<std::size_t>& nodes) {
    Field out = Field::zeros(*u.grid, ExteriorData::zero());
    for (std::size_t i : nodes) {
        const double lower = m.psi_minus.field.values[i];
        const double upper = m.psi_plus.field.values[i];
        out.values[i] =
            -Iu.values[i] - f.values[i] - p.value(lower - u.values[i]) + p.value(u.values[i] - upper);
    }
    return out;
}

}  // namespace nlobs
