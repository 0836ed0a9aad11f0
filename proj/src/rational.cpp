#include "ellgen/rational.hpp"

#include "ellgen/errors.hpp"

#include <cctype>

namespace ellgen {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto s = trim(text);
    auto slash = s.find('/');
    auto num = trim(s.substr(0, slash));
    auto den = slash == std::string_view::npos ? std::string_view{"1"} : trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw InputError("malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+')
        n.erase(0, 1);
    Integer d{std::string(den)};
    if (d == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(n), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r)
{
    Rational c(r);
    c.canonicalize();
    return c.get_str();
}

std::string to_fraction_string(const Rational& r)
{
    Rational c(r);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational power_of_two(int k)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(Integer(1), p) : Rational(p);
}

} // namespace ellgen
