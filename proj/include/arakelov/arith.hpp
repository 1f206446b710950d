#pragma once

#include <map>
#include <vector>

namespace arakelov {

// Small-integer number theory helpers. Arguments are positive unless noted.

std::map<long, int> factorize(long n);
bool is_prime(long n);
bool is_squarefree(long n);
long euler_phi(long n);
int moebius(long n);
long gcd(long a, long b);
long ipow(long base, int exp);

/* Legendre symbol (a/p) for an odd prime p. */
int legendre(long a, long p);

/* Divisors of n in increasing order. */
std::vector<long> divisors(long n);

}  // namespace arakelov
