/*
 * Copyright 2026 The illposed-gd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "illposed/linalg.hpp"

#include <cmath>
#include <string>

#include "illposed/errors.hpp"

namespace illposed
{

Vector::Vector(std::size_t size, double fill) : entries_(size, fill)
{
    require_finite();
}

Vector::Vector(std::initializer_list<double> entries) : entries_(entries)
{
    require_finite();
}

Vector::Vector(std::vector<double> entries) : entries_(std::move(entries))
{
    require_finite();
}

Vector Vector::unit(std::size_t size, std::size_t index)
{
    if (index >= size)
    {
        throw InvalidArgument("unit vector index out of range");
    }
    Vector e(size);
    e.entries_[index] = 1.0;
    return e;
}

void Vector::set(std::size_t i, double value)
{
    if (!std::isfinite(value))
    {
        throw NumericalError("attempt to store a non-finite vector entry");
    }
    entries_.at(i) = value;
}

Vector& Vector::operator+=(const Vector& other)
{
    require_same_size(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        entries_[i] += other.entries_[i];
    }
    require_finite();
    return *this;
}

Vector& Vector::operator-=(const Vector& other)
{
    require_same_size(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        entries_[i] -= other.entries_[i];
    }
    require_finite();
    return *this;
}

Vector& Vector::operator*=(double scalar)
{
    for (double& v : entries_)
    {
        v *= scalar;
    }
    require_finite();
    return *this;
}

Vector& Vector::axpy(double alpha, const Vector& other)
{
    require_same_size(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        entries_[i] += alpha * other.entries_[i];
    }
    require_finite();
    return *this;
}

void Vector::require_finite() const
{
    for (double v : entries_)
    {
        if (!std::isfinite(v))
        {
            throw NumericalError("non-finite vector entry");
        }
    }
}

void require_same_size(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
    {
        throw DimensionError(
            "dimension mismatch: " + std::to_string(a.size()) + " vs "
            + std::to_string(b.size()));
    }
}

double inner(const Vector& a, const Vector& b)
{
    require_same_size(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        sum += a[i] * b[i];
    }
    return sum;
}

double squared_norm(const Vector& a)
{
    double sum = 0.0;
    for (double v : a.entries())
    {
        sum += v * v;
    }
    return sum;
}

double norm(const Vector& a)
{
    return std::sqrt(squared_norm(a));
}

double distance(const Vector& a, const Vector& b)
{
    require_same_size(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Vector hadamard(const Vector& a, const Vector& b)
{
    require_same_size(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        out[i] = a[i] * b[i];
    }
    return Vector(std::move(out));
}

BallSpec::BallSpec(Vector center, double radius, double inner_radius)
    : center_(std::move(center)), radius_(radius), inner_radius_(inner_radius)
{
    if (!(radius > 0.0) || !std::isfinite(radius))
    {
        throw InvalidArgument("ball radius must be positive and finite");
    }
    if (!(inner_radius >= 0.0) || !(inner_radius < radius))
    {
        throw InvalidArgument("ball inner radius must satisfy 0 <= r0 < radius");
    }
}

bool BallSpec::contains(const Vector& x) const
{
    return distance(x, center_) <= radius_;
}

BallSpec BallSpec::with_inner_radius(double inner_radius) const
{
    return BallSpec(center_, radius_, inner_radius);
}

}  // namespace illposed
