#include "majam/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace majam {

namespace {

constexpr const char* kMagic = "majam-scenario 1";

std::string fmt(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

class LineReader
{
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::string next()
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return line;
        }
        fail("unexpected end of file");
    }

    // "<tag> <int> [<int>]"
    std::vector<long> header(const std::string& tag, std::size_t count)
    {
        std::istringstream ss(next());
        std::string word;
        ss >> word;
        if (word != tag) fail("expected '" + tag + "', got '" + word + "'");
        std::vector<long> out(count);
        for (auto& x : out)
            if (!(ss >> x) || x < 0) fail("bad size after '" + tag + "'");
        return out;
    }

    std::vector<double> reals(const std::string& line, std::size_t count)
    {
        std::vector<double> out;
        std::string_view rest(line);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto token = rest.substr(0, comma);
            double x = 0.0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
            if (ec != std::errc{} || ptr != token.data() + token.size()) fail("bad number '" + std::string(token) + "'");
            out.push_back(x);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (out.size() != count) fail("expected " + std::to_string(count) + " comma-separated values");
        return out;
    }

    std::vector<double> tagged_reals(const std::string& tag, std::size_t count)
    {
        const std::string line = next();
        if (line.rfind(tag + " ", 0) != 0) fail("expected '" + tag + "'");
        return reals(line.substr(tag.size() + 1), count);
    }

    Complex complex_value()
    {
        const auto v = reals(next(), 2);
        return {v[0], v[1]};
    }

    ComplexVector complex_vector(const std::string& tag)
    {
        const auto n = header(tag, 1)[0];
        ComplexVector out(n);
        for (auto& x : out) x = complex_value();
        return out;
    }

    VirtualAngles angles(const std::string& tag)
    {
        const auto n = header(tag, 1)[0];
        VirtualAngles out{Eigen::Matrix3Xd(3, n)};
        for (long j = 0; j < n; ++j) {
            const auto v = reals(next(), 3);
            out.directions.col(j) = Point3(v[0], v[1], v[2]);
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ScenarioFormatError("scenario line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::istream& in_;
    int line_no_ = 0;
};

void write_complex(std::ostream& out, const std::string& tag, const ComplexVector& v)
{
    out << tag << ' ' << v.size() << '\n';
    for (const auto& x : v) out << fmt(x.real()) << ',' << fmt(x.imag()) << '\n';
}

void write_angles(std::ostream& out, const std::string& tag, const VirtualAngles& a)
{
    out << tag << ' ' << a.n_paths() << '\n';
    for (int j = 0; j < a.n_paths(); ++j) {
        const auto d = a.directions.col(j);
        out << fmt(d[0]) << ',' << fmt(d[1]) << ',' << fmt(d[2]) << '\n';
    }
}

} // namespace

void write_scenario(std::ostream& out, const std::vector<UserEnvironment>& envs)
{
    out << kMagic << '\n';
    out << "users " << envs.size() << '\n';
    for (std::size_t k = 0; k < envs.size(); ++k) {
        const auto& e = envs[k];
        out << "user " << k << '\n';
        out << "position " << fmt(e.position.x()) << ',' << fmt(e.position.y()) << '\n';
        out << "distances " << fmt(e.d_bs) << ',' << fmt(e.d_jam) << '\n';
        write_complex(out, "direct", e.direct_channel);
        write_angles(out, "tx_paths", e.tx_angles);
        write_angles(out, "rx_paths", e.rx_angles);
        out << "prm " << e.prm.rows() << ' ' << e.prm.cols() << '\n';
        for (Eigen::Index i = 0; i < e.prm.rows(); ++i)
            for (Eigen::Index j = 0; j < e.prm.cols(); ++j)
                out << fmt(e.prm(i, j).real()) << ',' << fmt(e.prm(i, j).imag()) << '\n';
        out << "user_antenna " << fmt(e.user_antenna.x()) << ',' << fmt(e.user_antenna.y()) << ','
            << fmt(e.user_antenna.z()) << '\n';
        write_complex(out, "receive_frv", e.receive_frv);
        write_complex(out, "effective_path", e.effective_path);
    }
    out << "end\n";
}

std::vector<UserEnvironment> read_scenario(std::istream& in)
{
    LineReader r(in);
    if (r.next() != kMagic) r.fail("missing '" + std::string(kMagic) + "' header");
    const auto n_users = r.header("users", 1)[0];
    std::vector<UserEnvironment> envs(static_cast<std::size_t>(n_users));
    for (long k = 0; k < n_users; ++k) {
        auto& e = envs[static_cast<std::size_t>(k)];
        if (r.header("user", 1)[0] != k) r.fail("users out of order");
        const auto pos = r.tagged_reals("position", 2);
        e.position = {pos[0], pos[1]};
        const auto dist = r.tagged_reals("distances", 2);
        e.d_bs = dist[0];
        e.d_jam = dist[1];
        e.direct_channel = r.complex_vector("direct");
        e.tx_angles = r.angles("tx_paths");
        e.rx_angles = r.angles("rx_paths");
        const auto shape = r.header("prm", 2);
        e.prm.resize(shape[0], shape[1]);
        for (long i = 0; i < shape[0]; ++i)
            for (long j = 0; j < shape[1]; ++j) e.prm(i, j) = r.complex_value();
        const auto u = r.tagged_reals("user_antenna", 3);
        e.user_antenna = {u[0], u[1], u[2]};
        e.receive_frv = r.complex_vector("receive_frv");
        e.effective_path = r.complex_vector("effective_path");

        if (e.prm.rows() != e.tx_angles.n_paths() || e.prm.cols() != e.rx_angles.n_paths() ||
            e.receive_frv.size() != e.prm.cols() || e.effective_path.size() != e.prm.rows())
            r.fail("inconsistent path counts for user " + std::to_string(k));
        const ComplexVector b = e.prm * e.receive_frv;
        if ((b - e.effective_path).norm() > 1e-12 * b.norm())
            r.fail("effective_path != prm * receive_frv for user " + std::to_string(k));
    }
    if (r.next() != "end") r.fail("missing 'end'");
    return envs;
}

void save_scenario(const std::filesystem::path& path, const std::vector<UserEnvironment>& envs)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file '" + path.string() + "'");
    write_scenario(out, envs);
}

std::vector<UserEnvironment> load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path.string() + "'");
    return read_scenario(in);
}

} // namespace majam
