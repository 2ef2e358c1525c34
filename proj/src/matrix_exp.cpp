#include "slicereg/matrix_exp.hpp"

#include <cmath>

namespace slicereg {

Eigen::MatrixXd real_matrix_exp(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    const double theta13 = 5.371920351148152;
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    Eigen::MatrixXd scaled = a;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        scaled = a / std::ldexp(1.0, squarings);
    }

    static const double b[14] = {64764752532480000.0,
                                 32382376266240000.0,
                                 7771770303897600.0,
                                 1187353796428800.0,
                                 129060195264000.0,
                                 10559470521600.0,
                                 670442572800.0,
                                 33522128640.0,
                                 1323241920.0,
                                 40840800.0,
                                 960960.0,
                                 16380.0,
                                 182.0,
                                 1.0};

    const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd a2 = scaled * scaled;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a2 * a4;
    const Eigen::MatrixXd u = scaled * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                        b[5] * a4 + b[3] * a2 + b[1] * ident);
    const Eigen::MatrixXd v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

}  // namespace slicereg
