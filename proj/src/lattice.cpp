#include "arakelov/lattice.hpp"

#include <cmath>
#include <map>

#include "arakelov/errors.hpp"

namespace arakelov {

namespace {

/* Fincke-Pohst over an LLL-reduced form. Vectors are visited once per
 * +-pair (last nonzero coordinate positive); norms are recomputed exactly
 * on the scaled integer Gram matrix before the visitor sees them. */
class Enumerator {
  public:
    explicit Enumerator(const RatMatrix& gram)
    {
        const LllResult red = lll_reduce(gram);
        reduced_ = red.gram;
        n_ = reduced_.rows();
        scale_ = common_denominator(reduced_);
        gz_ = scale_to_integer(reduced_, scale_);
        small_ = true;
        gs_.assign(n_ * n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                if (!mpz_fits_slong_p(gz_(i, j).get_mpz_t()) || abs(gz_(i, j)) > (mpz_class(1) << 40))
                    small_ = false;
                else
                    gs_[i * n_ + j] = gz_(i, j).get_si();
            }
        const Cholesky ch = cholesky(reduced_);
        q_.resize(n_);
        mu_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            q_[i] = ch.pivots[i].get_d();
            for (std::size_t j = i + 1; j < n_; ++j)
                mu_[i * n_ + j] = ch.r(i, j).get_d();
        }
        x_.assign(n_, 0);
        partial_.assign(n_ + 1, 0.0);
    }

    const RatMatrix& reduced() const { return reduced_; }
    const mpz_class& scale() const { return scale_; }

    /* scale * x G x^t */
    mpz_class scaled_norm(const std::vector<long>& x) const
    {
        if (small_) {
            __int128 s = 0;
            bool ok = true;
            for (std::size_t i = 0; i < n_ && ok; ++i) {
                if (x[i] == 0)
                    continue;
                if (std::labs(x[i]) > (1L << 20)) {
                    ok = false;
                    break;
                }
                __int128 row = 0;
                for (std::size_t j = 0; j < n_; ++j)
                    row += static_cast<__int128>(gs_[i * n_ + j]) * x[j];
                s += row * x[i];
            }
            if (ok) {
                const bool neg = s < 0;
                unsigned __int128 u = neg ? -static_cast<unsigned __int128>(s) : static_cast<unsigned __int128>(s);
                mpz_class r = static_cast<unsigned long>(u >> 64);
                r <<= 64;
                r += static_cast<unsigned long>(u & ~0UL);
                return neg ? mpz_class(-r) : r;
            }
        }
        mpz_class s = 0, row;
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i] == 0)
                continue;
            row = 0;
            for (std::size_t j = 0; j < n_; ++j)
                row += gz_(i, j) * x[j];
            s += row * x[i];
        }
        return s;
    }

    /* visit(x, scaled_norm) for every pair +-x != 0 with norm <= bound;
     * the visitor may lower the bound (scaled) as it goes */
    template <typename Visit>
    void run(const mpz_class& scaled_bound, Visit&& visit)
    {
        bound_ = scaled_bound;
        set_float_bound();
        if (n_ > 0)
            descend(n_ - 1, true, visit);
    }

    void lower_bound(const mpz_class& scaled_bound)
    {
        bound_ = scaled_bound;
        set_float_bound();
    }

  private:
    void set_float_bound()
    {
        const double b = mpq_class(bound_, scale_).get_d();
        fbound_ = b * (1 + 1e-6) + 1e-9;
    }

    template <typename Visit>
    void descend(std::size_t i, bool higher_zero, Visit& visit)
    {
        double c = 0;
        for (std::size_t j = i + 1; j < n_; ++j)
            c -= mu_[i * n_ + j] * static_cast<double>(x_[j]);
        const double room = fbound_ - partial_[i + 1];
        if (room < 0)
            return;
        long lo = static_cast<long>(std::ceil(c - std::sqrt(room / q_[i])));
        if (higher_zero && lo < 0)
            lo = 0;
        for (long v = lo;; ++v) {
            const double d = static_cast<double>(v) - c;
            const double t = partial_[i + 1] + q_[i] * d * d;
            if (t > fbound_) {
                if (d > 0)
                    break;
                continue;
            }
            x_[i] = v;
            partial_[i] = t;
            const bool zero = higher_zero && v == 0;
            if (i > 0) {
                descend(i - 1, zero, visit);
            } else if (!zero) {
                const mpz_class norm = scaled_norm(x_);
                if (norm <= bound_)
                    visit(x_, norm);
            }
        }
        x_[i] = 0;
    }

    RatMatrix reduced_;
    std::size_t n_ = 0;
    mpz_class scale_;
    IntMatrix gz_;
    bool small_ = false;
    std::vector<long> gs_;
    std::vector<double> q_, mu_;
    std::vector<long> x_;
    std::vector<double> partial_;
    mpz_class bound_;
    double fbound_ = 0;
};

bool is_integral(const RatMatrix& g)
{
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (g(i, j).get_den() != 1)
                return false;
    return true;
}

}  // namespace

IdealLattice build_lattice(const FractionalIdeal& ideal, const FieldElement& alpha)
{
    if (!same_field(ideal.field(), alpha.field()))
        throw FieldMismatch(ideal.field()->spec() + " vs " + alpha.field()->spec());
    if (!is_totally_positive(alpha))
        throw FormError("alpha " + alpha.to_string() + " is not totally positive");
    IdealLattice lat{ideal, alpha, gram_matrix(ideal, alpha)};
    cholesky(lat.gram);
    return lat;
}

EmbeddingMatrix generator_matrix(const IdealLattice& lat, mpfr_prec_t bits)
{
    return twisted_embedding(lat.ideal.basis_elements(), lat.alpha, bits);
}

IdealLattice dual(const IdealLattice& lat)
{
    const FractionalIdeal d = trace_dual(lat.ideal, lat.alpha);
    return {d, lat.alpha, gram_matrix(d, lat.alpha)};
}

MinimumResult minimum(const RatMatrix& gram)
{
    if (gram.rows() == 0)
        throw ShapeError("minimum of the zero lattice");
    Enumerator en(gram);
    const RatMatrix& r = en.reduced();
    mpq_class start = r(0, 0);
    for (std::size_t i = 1; i < r.rows(); ++i)
        if (r(i, i) < start)
            start = r(i, i);
    mpz_class best = scale_to_integer(RatMatrix{{start}}, en.scale())(0, 0);
    std::uint64_t count = 0;
    en.run(best, [&](const std::vector<long>&, const mpz_class& norm) {
        if (norm < best) {
            best = norm;
            count = 0;
            en.lower_bound(best);
        }
        if (norm == best)
            count += 2;
    });
    mpq_class m(best, en.scale());
    m.canonicalize();
    return {m, count};
}

std::vector<ThetaTerm> theta_prefix(const RatMatrix& gram, const mpq_class& bound)
{
    if (sgn(bound) < 0)
        throw ShapeError("theta bound must be non-negative");
    std::vector<ThetaTerm> out{{0, 1}};
    if (gram.rows() == 0)
        return out;
    Enumerator en(gram);
    mpq_class b = bound * en.scale();
    mpz_class scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    std::map<mpz_class, std::uint64_t> counts;
    en.run(scaled, [&](const std::vector<long>&, const mpz_class& norm) { counts[norm] += 2; });
    for (const auto& [norm, c] : counts) {
        mpq_class q(norm, en.scale());
        q.canonicalize();
        out.push_back({q, c});
    }
    return out;
}

LatticeReport describe(const IdealLattice& lat, const ReportOptions& opt)
{
    LatticeReport r;
    r.dimension = lat.dimension();
    r.determinant = gram_determinant(lat.ideal, lat.alpha);
    r.integral = is_integral(lat.gram);
    r.even = r.integral;
    for (std::size_t i = 0; i < lat.dimension() && r.even; ++i)
        r.even = mpz_even_p(lat.gram(i, i).get_num_mpz_t());
    if (opt.minimum)
        r.minimum = minimum(lat.gram);
    if (opt.theta_bound)
        r.theta = theta_prefix(lat.gram, *opt.theta_bound);
    return r;
}

LatticeReport verify_modularity(const IdealLattice& lat, const ConstructionWitness& w, const ReportOptions& opt)
{
    const Field& f = lat.field();
    if (!same_field(f, w.beta.field()))
        throw FieldMismatch("witness over " + w.beta.field()->spec() + " for a lattice over " + f->spec());
    if (w.level < 1)
        throw ModularityFailure("(i)", "level must be positive");
    if (!(w.beta * conj(w.beta) == FieldElement::from_rational(f, w.level)))
        throw ModularityFailure("(i)", "beta * conj(beta) != " + std::to_string(w.level));
    const FractionalIdeal star = trace_dual(lat.ideal, lat.alpha);
    if (!(ideal_mul(principal(w.beta), star) == lat.ideal))
        throw ModularityFailure("(ii)", "beta * I^* != I");
    if (!lat.ideal.subset_of(star))
        throw ModularityFailure("(iii)", "I is not contained in I^*");
    LatticeReport r = describe(lat, opt);
    if (!r.integral)
        throw ModularityFailure("(iii)", "gram matrix is not integral");
    /* det^2 = level^dim */
    mpz_class target;
    mpz_ui_pow_ui(target.get_mpz_t(), static_cast<unsigned long>(w.level), r.dimension);
    if (r.determinant * r.determinant != target)
        throw ModularityFailure("(iv)", "det(gram) = " + r.determinant.get_str() + " is not level^(dim/2)");
    r.level = w.level;
    r.witness_checked = true;
    return r;
}

}  // namespace arakelov
