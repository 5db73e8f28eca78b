#include "cutsel/policy.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cutsel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Affine make_affine(std::size_t out, std::size_t in) {
    Affine a;
    a.out = out;
    a.in = in;
    a.w.assign(out * in, 0.0);
    a.b.assign(out, 0.0);
    return a;
}

void fill_uniform(Affine& a, SplitMix64& rng) {
    double bound = 1.0 / std::sqrt(static_cast<double>(a.in));
    for (double& v : a.w) v = rng.next_uniform(-bound, bound);
    for (double& v : a.b) v = rng.next_uniform(-bound, bound);
}

std::vector<double> apply(const Affine& a, const std::vector<double>& x) {
    if (x.size() != a.in) throw std::invalid_argument("affine input size mismatch");
    std::vector<double> y(a.out);
    for (std::size_t i = 0; i < a.out; ++i) {
        double s = a.b[i];
        const double* row = a.w.data() + i * a.in;
        for (std::size_t j = 0; j < a.in; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> relu(const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
    return y;
}

// accumulate dL/dW += dy x^T, dL/db += dy; return dL/dx = W^T dy
std::vector<double> backprop_affine(const Affine& a, Affine& grad,
                                    const std::vector<double>& x,
                                    const std::vector<double>& dy) {
    for (std::size_t i = 0; i < a.out; ++i) {
        double g = dy[i];
        if (g == 0.0) continue;
        double* grow = grad.w.data() + i * a.in;
        for (std::size_t j = 0; j < a.in; ++j) grow[j] += g * x[j];
        grad.b[i] += g;
    }
    std::vector<double> dx(a.in, 0.0);
    for (std::size_t i = 0; i < a.out; ++i) {
        double g = dy[i];
        if (g == 0.0) continue;
        const double* row = a.w.data() + i * a.in;
        for (std::size_t j = 0; j < a.in; ++j) dx[j] += row[j] * g;
    }
    return dx;
}

void mask_relu(std::vector<double>& dy, const std::vector<double>& pre) {
    for (std::size_t i = 0; i < dy.size(); ++i)
        if (pre[i] <= 0.0) dy[i] = 0.0;
}

void check_shapes(const PolicyParams& p) {
    std::size_t w = p.width;
    auto need = [](const Affine& a, std::size_t out, std::size_t in) {
        if (a.out != out || a.in != in || a.w.size() != out * in || a.b.size() != out)
            throw std::invalid_argument("parameter shapes do not match the width");
    };
    need(p.embed_v, w, 7);
    need(p.embed_c, w, 7);
    need(p.msg_vc, w, 2 * w + 1);
    need(p.upd_vc, w, 2 * w);
    need(p.msg_cv, w, 2 * w + 1);
    need(p.upd_cv, w, 2 * w);
    need(p.head, 4, w);
}

} // namespace

PolicyParams PolicyParams::zeros(std::size_t width) {
    if (width == 0) throw std::invalid_argument("width must be positive");
    PolicyParams p;
    p.width = width;
    p.embed_v = make_affine(width, 7);
    p.embed_c = make_affine(width, 7);
    p.msg_vc = make_affine(width, 2 * width + 1);
    p.upd_vc = make_affine(width, 2 * width);
    p.msg_cv = make_affine(width, 2 * width + 1);
    p.upd_cv = make_affine(width, 2 * width);
    p.head = make_affine(4, width);
    return p;
}

PolicyParams PolicyParams::init(std::uint64_t seed, std::size_t width) {
    PolicyParams p = zeros(width);
    SplitMix64 rng(seed);
    fill_uniform(p.embed_v, rng);
    fill_uniform(p.embed_c, rng);
    fill_uniform(p.msg_vc, rng);
    fill_uniform(p.upd_vc, rng);
    fill_uniform(p.msg_cv, rng);
    fill_uniform(p.upd_cv, rng);
    fill_uniform(p.head, rng);
    return p;
}

std::size_t PolicyParams::count() const {
    const Affine* fields[] = {&embed_v, &embed_c, &msg_vc, &upd_vc, &msg_cv, &upd_cv, &head};
    std::size_t c = 0;
    for (const Affine* a : fields) c += a->w.size() + a->b.size();
    return c;
}

std::vector<double> PolicyParams::to_flat() const {
    const Affine* fields[] = {&embed_v, &embed_c, &msg_vc, &upd_vc, &msg_cv, &upd_cv, &head};
    std::vector<double> flat;
    flat.reserve(count());
    for (const Affine* a : fields) {
        flat.insert(flat.end(), a->w.begin(), a->w.end());
        flat.insert(flat.end(), a->b.begin(), a->b.end());
    }
    return flat;
}

PolicyParams PolicyParams::from_flat(const std::vector<double>& flat, std::size_t width) {
    PolicyParams p = zeros(width);
    if (flat.size() != p.count())
        throw std::invalid_argument("flat parameter vector has wrong length");
    Affine* fields[] = {&p.embed_v, &p.embed_c, &p.msg_vc, &p.upd_vc, &p.msg_cv, &p.upd_cv,
                        &p.head};
    std::size_t pos = 0;
    for (Affine* a : fields) {
        std::copy(flat.begin() + pos, flat.begin() + pos + a->w.size(), a->w.begin());
        pos += a->w.size();
        std::copy(flat.begin() + pos, flat.begin() + pos + a->b.size(), a->b.begin());
        pos += a->b.size();
    }
    return p;
}

std::array<double, 4> forward(const BipartiteGraph& g, const PolicyParams& theta,
                              ForwardCache& cache) {
    check_shapes(theta);
    const std::size_t n = g.n, m = g.m, w = theta.width, ne = g.E.size();
    if (n == 0) throw std::invalid_argument("graph has no variable nodes");
    if (g.V.size() != n || g.C.size() != m)
        throw std::invalid_argument("graph feature shapes are inconsistent");

    cache.cons_edges.assign(m, {});
    cache.var_edges.assign(n, {});
    for (std::size_t e = 0; e < ne; ++e) {
        if (g.E[e].cons >= m || g.E[e].var >= n)
            throw std::invalid_argument("edge endpoint out of range");
        cache.cons_edges[g.E[e].cons].push_back(e);
        cache.var_edges[g.E[e].var].push_back(e);
    }

    cache.hv1_pre.resize(n);
    cache.hv1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(g.V[i].begin(), g.V[i].end());
        cache.hv1_pre[i] = apply(theta.embed_v, x);
        cache.hv1[i] = relu(cache.hv1_pre[i]);
    }
    cache.hc1_pre.resize(m);
    cache.hc1.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> x(g.C[j].begin(), g.C[j].end());
        cache.hc1_pre[j] = apply(theta.embed_c, x);
        cache.hc1[j] = relu(cache.hc1_pre[j]);
    }

    cache.msg_vc_in.resize(ne);
    cache.msg_vc_pre.resize(ne);
    cache.msg_vc.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double>& in = cache.msg_vc_in[e];
        in.clear();
        in.reserve(2 * w + 1);
        const auto& edge = g.E[e];
        in.insert(in.end(), cache.hv1[edge.var].begin(), cache.hv1[edge.var].end());
        in.push_back(edge.coeff);
        in.insert(in.end(), cache.hc1[edge.cons].begin(), cache.hc1[edge.cons].end());
        cache.msg_vc_pre[e] = apply(theta.msg_vc, in);
        cache.msg_vc[e] = relu(cache.msg_vc_pre[e]);
    }
    cache.agg_c.assign(m, std::vector<double>(w, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        const auto& es = cache.cons_edges[j];
        if (es.empty()) continue;
        for (std::size_t e : es)
            for (std::size_t k = 0; k < w; ++k) cache.agg_c[j][k] += cache.msg_vc[e][k];
        for (std::size_t k = 0; k < w; ++k) cache.agg_c[j][k] /= static_cast<double>(es.size());
    }
    cache.upd_vc_in.resize(m);
    cache.hc2_pre.resize(m);
    cache.hc2.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double>& in = cache.upd_vc_in[j];
        in.clear();
        in.reserve(2 * w);
        in.insert(in.end(), cache.hc1[j].begin(), cache.hc1[j].end());
        in.insert(in.end(), cache.agg_c[j].begin(), cache.agg_c[j].end());
        cache.hc2_pre[j] = apply(theta.upd_vc, in);
        cache.hc2[j] = relu(cache.hc2_pre[j]);
    }

    cache.msg_cv_in.resize(ne);
    cache.msg_cv_pre.resize(ne);
    cache.msg_cv.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double>& in = cache.msg_cv_in[e];
        in.clear();
        in.reserve(2 * w + 1);
        const auto& edge = g.E[e];
        in.insert(in.end(), cache.hc2[edge.cons].begin(), cache.hc2[edge.cons].end());
        in.push_back(edge.coeff);
        in.insert(in.end(), cache.hv1[edge.var].begin(), cache.hv1[edge.var].end());
        cache.msg_cv_pre[e] = apply(theta.msg_cv, in);
        cache.msg_cv[e] = relu(cache.msg_cv_pre[e]);
    }
    cache.agg_v.assign(n, std::vector<double>(w, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& es = cache.var_edges[i];
        if (es.empty()) continue;
        for (std::size_t e : es)
            for (std::size_t k = 0; k < w; ++k) cache.agg_v[i][k] += cache.msg_cv[e][k];
        for (std::size_t k = 0; k < w; ++k) cache.agg_v[i][k] /= static_cast<double>(es.size());
    }
    cache.upd_cv_in.resize(n);
    cache.hv2_pre.resize(n);
    cache.hv2.resize(n);
    cache.hv3.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double>& in = cache.upd_cv_in[i];
        in.clear();
        in.reserve(2 * w);
        in.insert(in.end(), cache.hv1[i].begin(), cache.hv1[i].end());
        in.insert(in.end(), cache.agg_v[i].begin(), cache.agg_v[i].end());
        cache.hv2_pre[i] = apply(theta.upd_cv, in);
        cache.hv2[i] = relu(cache.hv2_pre[i]);
        cache.hv3[i] = apply(theta.head, cache.hv2[i]);
    }

    std::array<double, 4> mu{};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < 4; ++k) mu[k] += cache.hv3[i][k];
    for (std::size_t k = 0; k < 4; ++k) mu[k] /= static_cast<double>(n);
    return mu;
}

std::array<double, 4> forward(const BipartiteGraph& g, const PolicyParams& theta) {
    ForwardCache cache;
    return forward(g, theta, cache);
}

PolicyParams backward(const BipartiteGraph& g, const PolicyParams& theta,
                      const ForwardCache& cache, const std::array<double, 4>& dmu) {
    check_shapes(theta);
    const std::size_t n = g.n, m = g.m, w = theta.width, ne = g.E.size();
    if (cache.hv3.size() != n)
        throw std::invalid_argument("cache does not match the graph");
    PolicyParams grad = PolicyParams::zeros(w);

    // mu = column means of hv3
    std::vector<double> dhv3(4);
    for (std::size_t k = 0; k < 4; ++k) dhv3[k] = dmu[k] / static_cast<double>(n);

    std::vector<std::vector<double>> dhv1(n, std::vector<double>(w, 0.0));
    std::vector<std::vector<double>> dhc1(m, std::vector<double>(w, 0.0));
    std::vector<std::vector<double>> dmsg_cv(ne, std::vector<double>(w, 0.0));
    std::vector<std::vector<double>> dmsg_vc(ne, std::vector<double>(w, 0.0));
    std::vector<std::vector<double>> dhc2(m, std::vector<double>(w, 0.0));

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> dhv2 = backprop_affine(theta.head, grad.head, cache.hv2[i], dhv3);
        mask_relu(dhv2, cache.hv2_pre[i]);
        std::vector<double> din =
            backprop_affine(theta.upd_cv, grad.upd_cv, cache.upd_cv_in[i], dhv2);
        for (std::size_t k = 0; k < w; ++k) dhv1[i][k] += din[k];
        const auto& es = cache.var_edges[i];
        if (!es.empty()) {
            double inv = 1.0 / static_cast<double>(es.size());
            for (std::size_t e : es)
                for (std::size_t k = 0; k < w; ++k) dmsg_cv[e][k] += din[w + k] * inv;
        }
    }

    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double> dy = dmsg_cv[e];
        mask_relu(dy, cache.msg_cv_pre[e]);
        std::vector<double> din =
            backprop_affine(theta.msg_cv, grad.msg_cv, cache.msg_cv_in[e], dy);
        const auto& edge = g.E[e];
        for (std::size_t k = 0; k < w; ++k) {
            dhc2[edge.cons][k] += din[k];
            dhv1[edge.var][k] += din[w + 1 + k];
        }
    }

    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> dy = dhc2[j];
        mask_relu(dy, cache.hc2_pre[j]);
        std::vector<double> din =
            backprop_affine(theta.upd_vc, grad.upd_vc, cache.upd_vc_in[j], dy);
        for (std::size_t k = 0; k < w; ++k) dhc1[j][k] += din[k];
        const auto& es = cache.cons_edges[j];
        if (!es.empty()) {
            double inv = 1.0 / static_cast<double>(es.size());
            for (std::size_t e : es)
                for (std::size_t k = 0; k < w; ++k) dmsg_vc[e][k] += din[w + k] * inv;
        }
    }

    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double> dy = dmsg_vc[e];
        mask_relu(dy, cache.msg_vc_pre[e]);
        std::vector<double> din =
            backprop_affine(theta.msg_vc, grad.msg_vc, cache.msg_vc_in[e], dy);
        const auto& edge = g.E[e];
        for (std::size_t k = 0; k < w; ++k) {
            dhv1[edge.var][k] += din[k];
            dhc1[edge.cons][k] += din[w + 1 + k];
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> dy = dhv1[i];
        mask_relu(dy, cache.hv1_pre[i]);
        std::vector<double> x(g.V[i].begin(), g.V[i].end());
        backprop_affine(theta.embed_v, grad.embed_v, x, dy);
    }
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> dy = dhc1[j];
        mask_relu(dy, cache.hc1_pre[j]);
        std::vector<double> x(g.C[j].begin(), g.C[j].end());
        backprop_affine(theta.embed_c, grad.embed_c, x, dy);
    }
    return grad;
}

GaussianAction sample_action(const std::array<double, 4>& mu, double gamma, SplitMix64& rng) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    GaussianAction act;
    act.mu = mu;
    act.gamma = gamma;
    double sd = std::sqrt(gamma);
    double lp = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        act.sample[k] = mu[k] + sd * rng.next_normal();
        double dv = act.sample[k] - mu[k];
        lp += -dv * dv / (2.0 * gamma) - 0.5 * std::log(kTwoPi * gamma);
    }
    act.logprob = lp;
    return act;
}

PolicyParams grad_logprob(const BipartiteGraph& g, const PolicyParams& theta,
                          const GaussianAction& action) {
    if (!(action.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    ForwardCache cache;
    std::array<double, 4> mu = forward(g, theta, cache);
    std::array<double, 4> dmu{};
    for (std::size_t k = 0; k < 4; ++k) dmu[k] = (action.sample[k] - mu[k]) / action.gamma;
    return backward(g, theta, cache, dmu);
}

double gamma_schedule(int i_epoch, int n_epochs) {
    if (n_epochs < 1) throw std::invalid_argument("epoch count must be >= 1");
    if (i_epoch < 0 || i_epoch > n_epochs)
        throw std::invalid_argument("epoch index out of range");
    return 0.01 - 0.009 * static_cast<double>(i_epoch) / static_cast<double>(n_epochs);
}

std::uint64_t seed_search(const std::vector<BipartiteGraph>& graphs, int n_seeds,
                          std::size_t width) {
    if (graphs.empty()) throw std::invalid_argument("seed search needs at least one graph");
    if (n_seeds < 1) throw std::invalid_argument("seed count must be >= 1");
    std::uint64_t best_seed = 0;
    double best_obj = kInf;
    for (int s = 0; s < n_seeds; ++s) {
        PolicyParams theta = PolicyParams::init(static_cast<std::uint64_t>(s), width);
        double obj = 0.0;
        for (const BipartiteGraph& g : graphs) {
            std::array<double, 4> mu = forward(g, theta);
            for (double v : mu) obj += std::fabs(v - 0.25);
        }
        if (obj < best_obj) {
            best_obj = obj;
            best_seed = static_cast<std::uint64_t>(s);
        }
    }
    return best_seed;
}

namespace {
constexpr char kMagic[8] = {'C', 'S', 'E', 'L', 'P', 'O', 'L', '1'};
static_assert(std::endian::native == std::endian::little,
              "checkpoint layout assumes a little-endian host");
} // namespace

void save_checkpoint(const PolicyParams& theta, const std::string& path) {
    check_shapes(theta);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    f.write(kMagic, 8);
    std::uint32_t version = 1;
    std::uint32_t count = static_cast<std::uint32_t>(theta.count());
    f.write(reinterpret_cast<const char*>(&version), 4);
    f.write(reinterpret_cast<const char*>(&count), 4);
    std::vector<double> flat = theta.to_flat();
    f.write(reinterpret_cast<const char*>(flat.data()),
            static_cast<std::streamsize>(flat.size() * sizeof(double)));
    if (!f) throw std::runtime_error("checkpoint write failed: " + path);
}

PolicyParams load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[8];
    std::uint32_t version = 0, count = 0;
    f.read(magic, 8);
    f.read(reinterpret_cast<char*>(&version), 4);
    f.read(reinterpret_cast<char*>(&count), 4);
    if (!f || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("not a policy checkpoint: " + path);
    if (version != 1)
        throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
    std::size_t width = 0;
    for (std::size_t w = 1; w <= 8192; ++w) {
        if (8 * w * w + 26 * w + 4 == count) {
            width = w;
            break;
        }
    }
    if (width == 0)
        throw std::runtime_error("checkpoint parameter count matches no hidden width");
    std::vector<double> flat(count);
    f.read(reinterpret_cast<char*>(flat.data()),
           static_cast<std::streamsize>(flat.size() * sizeof(double)));
    if (!f) throw std::runtime_error("checkpoint truncated: " + path);
    return PolicyParams::from_flat(flat, width);
}

} // namespace cutsel
