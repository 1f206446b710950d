#include "arakelov/existence.hpp"

#include <algorithm>
#include <cmath>

#include "arakelov/arith.hpp"
#include "arakelov/errors.hpp"

namespace arakelov {

namespace {

long padic(long x, long p)
{
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

long odd_part_radical(long n)
{
    long r = 1;
    for (const auto& [p, e] : factorize(n))
        if (p != 2)
            r *= p;
    return r;
}

FieldElement rational(const Field& f, const mpq_class& q) { return FieldElement::from_rational(f, q); }

/* sqrt(d) or sqrt(-d) in quad:+-d */
FieldElement quadratic_root(const Field& f)
{
    const long d = f->parameter();
    const bool shifted = f->kind() == FieldKind::real_quadratic ? d % 4 == 1 : d % 4 == 3;
    return shifted ? FieldElement(f, {-1, 2}) : FieldElement(f, {0, 1});
}

/* Try each (alpha, v(alpha)) in turn; first solvable one wins. */
std::optional<ConstructionWitness> build(const Field& f, long level, const std::optional<FieldElement>& beta,
                                         const std::vector<std::pair<FieldElement, std::map<long, long>>>& alphas,
                                         const ExistenceOptions& opt)
{
    if (!beta)
        return std::nullopt;
    for (const auto& [alpha, val] : alphas) {
        auto recipe = solve_ideal(f, level, val);
        if (!recipe)
            continue;
        ConstructionWitness w{level, *beta, alpha, std::move(*recipe)};
        if (opt.check)
            check_witness(w);
        return w;
    }
    return std::nullopt;
}

void add_level(ExistenceVerdict& v, long level, std::optional<ConstructionWitness> w, const ExistenceOptions& opt)
{
    if (opt.witnesses && !w)
        throw InternalInconsistency("no witness for level " + std::to_string(level) + " over " + v.field->spec());
    v.levels.push_back(level);
    v.witnesses.emplace(level, std::move(w));
}

void check_prime_power_args(long p, long r)
{
    if (p == 2 || !is_prime(p))
        throw SpecError("p must be an odd prime, got " + std::to_string(p));
    if (r < 1)
        throw SpecError("r must be positive, got " + std::to_string(r));
    if (std::log2(static_cast<double>(p)) * static_cast<double>(r) > 20)
        throw SpecError("p^r too large");
}

}  // namespace

bool ExistenceVerdict::admits(long level) const
{
    return std::find(levels.begin(), levels.end(), level) != levels.end();
}

OmegaSets omega_sets(const Field& f)
{
    OmegaSets s;
    for (const auto& [p, e] : f->ramification()) {
        s.omega.push_back(p);
        if (e % 2 == 0)
            s.omega_even.push_back(p);
    }
    return s;
}

bool check_level_bound(const Field& f, long level)
{
    if (level < 1)
        return false;
    if (f->degree() % 2 == 1)
        return level == 1;
    long prod = 1;
    for (long p : omega_sets(f).omega_even)
        prod *= p;
    return is_squarefree(level) && prod % level == 0;
}

std::optional<IdealRecipe> solve_ideal(const Field& f, long level, const std::map<long, long>& alpha_valuation)
{
    std::vector<std::pair<long, long>> exps;
    for (const auto& [p, e] : f->ramification()) {
        const long twice_beta = e * padic(level, p);
        if (twice_beta % 2)
            return std::nullopt;
        const auto it = alpha_valuation.find(p);
        const long v = twice_beta / 2 - (it == alpha_valuation.end() ? 0 : it->second) - different_valuation(f, p);
        if (v % 2)
            return std::nullopt;
        exps.emplace_back(p, v / 2);
    }
    for (const auto& [p, k] : alpha_valuation)
        if (k && !f->ramification().count(p))
            throw Unsupported("alpha supported at unramified prime " + std::to_string(p));
    return IdealRecipe::radicals(exps);
}

std::map<long, long> witness_valuations(const FieldElement& alpha, const FieldElement& beta)
{
    const Field& f = beta.field();
    const FractionalIdeal x = ideal_mul(principal(beta / alpha), codifferent(f));
    std::map<long, long> out;
    for (const auto& [p, e] : f->ramification())
        out[p] = valuation(x, p);
    return out;
}

void check_witness(const ConstructionWitness& w)
{
    const Field& f = w.beta.field();
    auto fail = [&](const std::string& what) {
        throw InternalInconsistency("witness over " + f->spec() + " at level " + std::to_string(w.level) + ": " + what);
    };
    if (!same_field(f, w.alpha.field()))
        fail("alpha and beta live in different fields");
    if (!(w.beta * conj(w.beta) == FieldElement::from_rational(f, w.level)))
        fail("beta * conj(beta) != level");
    if (!is_totally_positive(w.alpha))
        fail("alpha is not totally positive");
    const FractionalIdeal b = principal(w.beta);
    for (const auto& [p, e] : f->ramification())
        if (2 * valuation(b, p) != e * padic(w.level, p))
            fail("v_" + std::to_string(p) + "(beta) is not half of v_" + std::to_string(p) + "(level)");
    const FractionalIdeal i = realize(w.ideal, f);
    if (!(ideal_mul(i, conj(i)) == ideal_mul(principal(w.beta / w.alpha), codifferent(f))))
        fail("I * conj(I) != alpha^{-1} beta D_K^{-1}");
}

ConstructionWitness rescale(const ConstructionWitness& w, long l2)
{
    const Field& f = w.beta.field();
    if (l2 < 1)
        throw SpecError("rescaling factor must be positive");
    if (f->is_cm() && gcd(l2, w.level) != 1)
        throw SpecError("over a CM field the rescaling factor must be coprime to the level");
    ConstructionWitness out = w;
    if (l2 == 1)
        return out;
    IdealRecipe::Factor scale;
    scale.element.assign(f->degree(), 0);
    scale.element[0] = l2;
    out.ideal.factors.push_back(std::move(scale));
    out.alpha = w.alpha / rational(f, l2);
    out.beta = w.beta * rational(f, l2);
    out.level = w.level * l2 * l2;
    return out;
}

ExistenceVerdict mod_quadratic(const Field& f, const ExistenceOptions& opt)
{
    if (f->kind() != FieldKind::real_quadratic && f->kind() != FieldKind::imag_quadratic)
        throw SpecError(f->spec() + " is not quadratic");
    ExistenceVerdict v;
    v.field = f;
    v.trace_type = true;
    v.rule = f->is_cm() ? "imaginary quadratic trace type" : "real quadratic trace type";
    const long d = f->parameter();
    std::optional<ConstructionWitness> w;
    if (opt.witnesses)
        w = build(f, d, quadratic_root(f), {{rational(f, 1), {}}}, opt);
    add_level(v, d, std::move(w), opt);
    return v;
}

ExistenceVerdict mod_prime_power(long p, long r, bool trace_type, const ExistenceOptions& opt)
{
    check_prime_power_args(p, r);
    const Field f = NumberField::make(FieldKind::real_cyclotomic, ipow(p, static_cast<int>(r)));
    ExistenceVerdict v;
    v.field = f;
    v.trace_type = trace_type;
    v.rule = trace_type ? "prime power trace type" : "prime power";

    std::vector<long> levels;
    if (p % 4 == 3)
        levels = {1};
    else if (trace_type)
        levels = p % 8 == 5 ? std::vector<long>{p} : std::vector<long>{};
    else
        levels = {1, p};

    for (long level : levels) {
        std::optional<ConstructionWitness> w;
        if (opt.witnesses) {
            std::vector<std::pair<FieldElement, std::map<long, long>>> alphas{{rational(f, 1), {}}};
            if (!trace_type && f->ramification().count(p))
                alphas.emplace_back(two_minus_two_cos(f, f->parameter()).inverse(), std::map<long, long>{{p, -1}});
            w = build(f, level, sqrt_integer(f, level), alphas, opt);
        }
        add_level(v, level, std::move(w), opt);
    }
    return v;
}

ExistenceVerdict mod_nonprimepower_trace(long n, const ExistenceOptions& opt)
{
    if (n < 3 || n % 4 == 2)
        throw SpecError("n must satisfy n >= 3 and n != 2 mod 4");
    const auto fac = factorize(n);
    if (fac.size() == 1)
        throw SpecError(std::to_string(n) + " is a prime power");
    const Field f = NumberField::make(FieldKind::real_cyclotomic, n);
    ExistenceVerdict v;
    v.field = f;
    v.trace_type = true;
    v.rule = "non prime power trace type";

    const long nt = odd_part_radical(n);
    std::vector<long> levels;
    const bool has_1mod4 = std::any_of(fac.begin(), fac.end(), [](const auto& pe) { return pe.first % 4 == 1; });
    if (!has_1mod4) {
        if (n % 2 == 1) {
            if (fac.size() % 2 == 0)
                levels = {nt};
        } else if (fac.at(2) == 2) {
            levels = {nt};
        } else {
            levels = {nt, 2 * nt};
        }
    }
    for (long level : levels) {
        std::optional<ConstructionWitness> w;
        if (opt.witnesses)
            w = build(f, level, sqrt_integer(f, level), {{rational(f, 1), {}}}, opt);
        add_level(v, level, std::move(w), opt);
    }
    return v;
}

ExistenceVerdict mod_odd_degree(const Field& f, const ExistenceOptions& opt)
{
    if (f->degree() % 2 == 0)
        throw SpecError(f->spec() + " has even degree");
    for (const auto& [p, e] : f->ramification())
        if (different_valuation(f, p) % 2)
            throw InternalInconsistency("odd different valuation at " + std::to_string(p) + " over " + f->spec());
    ExistenceVerdict v;
    v.field = f;
    v.trace_type = true;
    v.rule = "odd degree";
    std::optional<ConstructionWitness> w;
    if (opt.witnesses)
        w = build(f, 1, rational(f, 1), {{rational(f, 1), {}}}, opt);
    add_level(v, 1, std::move(w), opt);
    return v;
}

ExistenceVerdict classify(const Field& f, bool trace_type, const ExistenceOptions& opt)
{
    if (f->degree() % 2 == 1) {
        auto v = mod_odd_degree(f, opt);
        v.trace_type = trace_type;
        return v;
    }
    switch (f->kind()) {
    case FieldKind::real_quadratic:
    case FieldKind::imag_quadratic:
        return mod_quadratic(f, opt);
    case FieldKind::cyclotomic:
        break;
    case FieldKind::real_cyclotomic: {
        const auto fac = factorize(f->parameter());
        if (fac.size() > 1)
            return mod_nonprimepower_trace(f->parameter(), opt);
        const auto [p, r] = *fac.begin();
        if (p != 2)
            return mod_prime_power(p, r, trace_type, opt);
        break;
    }
    }
    throw SpecError("no classification available over " + f->spec());
}

}  // namespace arakelov
