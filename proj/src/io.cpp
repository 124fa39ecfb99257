#include "choreo/io.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace choreo {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_loop_csv(std::ostream& os, const FourierLoop& loop) {
    os << "k";
    for (int j = 1; j <= loop.dim; ++j) os << ",re_" << j << ",im_" << j;
    os << "\n";
    for (int k = 1; k <= loop.modes(); ++k) {
        os << k;
        for (int j = 0; j < loop.dim; ++j)
            os << ',' << format_double(loop.a(k, j).real()) << ','
               << format_double(loop.a(k, j).imag());
        os << "\n";
    }
}

namespace {
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}
}  // namespace

FourierLoop read_loop_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("loop CSV: empty input");
    const auto header = split_csv(line);
    if (header.size() < 5 || header[0] != "k" || (header.size() - 1) % 2 != 0)
        throw DomainError("loop CSV: malformed header");
    const int dim = static_cast<int>((header.size() - 1) / 2);

    std::vector<std::complex<double>> coeffs;
    int expected_k = 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (static_cast<int>(fields.size()) != 1 + 2 * dim)
            throw DomainError("loop CSV: wrong column count in row");
        if (std::stoi(fields[0]) != expected_k)
            throw DomainError("loop CSV: modes must be consecutive from k = 1");
        for (int j = 0; j < dim; ++j)
            coeffs.emplace_back(std::stod(fields[1 + 2 * j]), std::stod(fields[2 + 2 * j]));
        ++expected_k;
    }
    if (coeffs.empty()) throw DomainError("loop CSV: no modes");
    FourierLoop loop;
    loop.dim = dim;
    loop.coeffs = std::move(coeffs);
    return loop;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum) {
    os << "k,d_k,lambda_k\n";
    for (int k = 1; k <= spectrum.K; ++k)
        os << k << ',' << format_double(spectrum.d(k)) << ','
           << format_double(spectrum.lambda(k)) << "\n";
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    if (traj.states.empty()) throw DomainError("trajectory CSV: empty trajectory");
    const int dim = traj.states.front().dim;
    os << "t,body";
    for (int j = 1; j <= dim; ++j) os << ",x_" << j;
    for (int j = 1; j <= dim; ++j) os << ",v_" << j;
    os << "\n";
    for (const NBodyState& st : traj.states) {
        for (int i = 0; i < st.n(); ++i) {
            os << format_double(st.time) << ',' << i;
            for (int j = 0; j < dim; ++j) os << ',' << format_double(st.positions[i * dim + j]);
            for (int j = 0; j < dim; ++j) os << ',' << format_double(st.velocities[i * dim + j]);
            os << "\n";
        }
    }
}

void write_scan_csv(std::ostream& os, std::span<const ScanRow> rows) {
    os << "sigma,seed,predicted_min,achieved_min,gap,circle_distance,iterations,converged\n";
    for (const ScanRow& r : rows) {
        os << format_double(r.sigma) << ',' << r.seed << ','
           << format_double(r.predicted_min) << ',' << format_double(r.achieved_min)
           << ',' << format_double(r.gap) << ',' << format_double(r.circle_dist) << ','
           << r.iterations << ',' << (r.converged ? 1 : 0) << "\n";
    }
}

nlohmann::json params_json(const ModelParams& params) {
    return nlohmann::json{{"sigma", params.sigma}, {"c", params.c}, {"v2", params.v2}};
}

nlohmann::json breakdown_json(const ActionBreakdown& br, double sigma, int K, int M) {
    return nlohmann::json{{"kinetic", br.kinetic},
                          {"potential", br.potential},
                          {"total", br.total},
                          {"tilde", br.tilde},
                          {"bar", br.bar},
                          {"mu_xi", br.mu_xi},
                          {"sigma", sigma},
                          {"K", K},
                          {"M", M}};
}

}  // namespace choreo
