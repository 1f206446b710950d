#include "arakelov/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace arakelov {

std::map<long, int> factorize(long n)
{
    if (n <= 0)
        throw std::invalid_argument("factorize: non-positive argument");
    std::map<long, int> f;
    for (long p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1)
        ++f[n];
    return f;
}

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

bool is_squarefree(long n)
{
    for (const auto& [p, e] : factorize(n))
        if (e > 1)
            return false;
    return true;
}

long euler_phi(long n)
{
    long r = n;
    for (const auto& [p, e] : factorize(n))
        r = r / p * (p - 1);
    return r;
}

int moebius(long n)
{
    int s = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1)
            return 0;
        s = -s;
    }
    return s;
}

long gcd(long a, long b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

long ipow(long base, int exp)
{
    long r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

int legendre(long a, long p)
{
    a %= p;
    if (a < 0)
        a += p;
    if (a == 0)
        return 0;
    /* Euler's criterion by square-and-multiply */
    long r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1)
            r = static_cast<long>((static_cast<__int128>(r) * b) % p);
        b = static_cast<long>((static_cast<__int128>(b) * b) % p);
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

std::vector<long> divisors(long n)
{
    std::vector<long> d{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = d.size();
        long pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace arakelov
