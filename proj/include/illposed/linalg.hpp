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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace illposed
{

// Finite-dimensional real Hilbert space with the Euclidean inner product.
//
// A Vector never stores NaN or Inf: every constructor and arithmetic
// operation validates its result and throws NumericalError otherwise.
// Binary operations on vectors of different size throw DimensionError.
class Vector
{
public:
    Vector() = default;
    explicit Vector(std::size_t size, double fill = 0.0);
    Vector(std::initializer_list<double> entries);
    explicit Vector(std::vector<double> entries);

    static Vector zeros(std::size_t size) { return Vector(size); }
    static Vector unit(std::size_t size, std::size_t index);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double operator[](std::size_t i) const { return entries_[i]; }
    void set(std::size_t i, double value);

    std::span<const double> entries() const { return entries_; }
    const std::vector<double>& data() const { return entries_; }

    Vector& operator+=(const Vector& other);
    Vector& operator-=(const Vector& other);
    Vector& operator*=(double scalar);

    /// this += alpha * other
    Vector& axpy(double alpha, const Vector& other);

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(Vector a, double s) { return a *= s; }
    friend Vector operator*(double s, Vector a) { return a *= s; }
    friend Vector operator-(Vector a) { return a *= -1.0; }

    // Bitwise equality; used by determinism checks.
    bool operator==(const Vector& other) const = default;

private:
    void require_finite() const;

    std::vector<double> entries_;
};

void require_same_size(const Vector& a, const Vector& b);

double inner(const Vector& a, const Vector& b);
double norm(const Vector& a);
double squared_norm(const Vector& a);
double distance(const Vector& a, const Vector& b);

/// Componentwise product.
Vector hadamard(const Vector& a, const Vector& b);

// Closed ball B_radius(center) with an inner radius used by the balancing
// sampler. Requires 0 <= inner_radius < radius.
class BallSpec
{
public:
    BallSpec(Vector center, double radius, double inner_radius = 0.0);

    const Vector& center() const { return center_; }
    double radius() const { return radius_; }
    double inner_radius() const { return inner_radius_; }
    std::size_t dimension() const { return center_.size(); }

    /// norm(x - center) <= radius
    bool contains(const Vector& x) const;
    /// Strict exceedance of the radius; the complement of contains().
    bool escaped(const Vector& x) const { return !contains(x); }

    BallSpec with_inner_radius(double inner_radius) const;

private:
    Vector center_;
    double radius_;
    double inner_radius_;
};

inline bool in_ball(const BallSpec& ball, const Vector& x)
{
    return ball.contains(x);
}

}  // namespace illposed
