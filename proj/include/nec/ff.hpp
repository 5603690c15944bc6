#pragma once

// Arithmetic and dense linear algebra over prime fields GF(p).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nec {

using Value = std::uint32_t;
using Row = std::vector<Value>;

bool is_prime(std::uint64_t n);

/// GF(p) for a prime p < 2^31. Construction rejects composite moduli.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t modulus);

    std::uint64_t modulus() const { return p_; }
    std::uint64_t size() const { return p_; }

    Value reduce(std::int64_t v) const;
    Value add(Value a, Value b) const;
    Value sub(Value a, Value b) const;
    Value neg(Value a) const;
    Value mul(Value a, Value b) const;
    /// Throws DomainError for zero.
    Value inv(Value a) const;

    bool operator==(const PrimeField&) const = default;

private:
    std::uint64_t p_;
};

/// A single field element tagged with its field. Mixing fields is a UsageError.
class FieldElement {
public:
    FieldElement(const PrimeField& field, std::int64_t value);

    Value value() const { return value_; }
    const PrimeField& field() const { return field_; }

    FieldElement inverse() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    bool operator==(const FieldElement&) const = default;

private:
    PrimeField field_;
    Value value_;
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_inv(const FieldElement& a);

/// Dense row-major matrix over a prime field. Zero-row and zero-column
/// matrices are valid values.
class FieldMatrix {
public:
    FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);
    FieldMatrix(const PrimeField& field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static FieldMatrix from_rows(const PrimeField& field, std::size_t cols, const std::vector<Row>& rows);
    static FieldMatrix identity(const PrimeField& field, std::size_t n);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Value operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v);

    std::span<const Value> row(std::size_t r) const;
    Row row_vector(std::size_t r) const;
    Row column_vector(std::size_t c) const;
    bool row_is_zero(std::size_t r) const;

    void append_row(std::span<const Value> row);
    FieldMatrix select_rows(std::span<const std::size_t> indices) const;
    FieldMatrix select_columns(std::span<const std::size_t> indices) const;
    /// This matrix with `below` stacked underneath.
    FieldMatrix stacked(const FieldMatrix& below) const;
    FieldMatrix transposed() const;

    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
    bool operator==(const FieldMatrix&) const = default;

    std::string to_string() const;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Value> data_;
};

/// x * m for a row vector x of length m.rows().
Row row_times(std::span<const Value> x, const FieldMatrix& m);
Row row_add(const PrimeField& field, std::span<const Value> a, std::span<const Value> b);
Row row_sub(const PrimeField& field, std::span<const Value> a, std::span<const Value> b);
bool is_zero(std::span<const Value> v);

std::size_t mat_rank(const FieldMatrix& m);

/// Basis (as rows) of { x : x * m = 0 }.
FieldMatrix left_nullspace(const FieldMatrix& m);

/// Basis (as rows) of rowspace(a) ∩ rowspace(b).
FieldMatrix intersection_basis(const FieldMatrix& a, const FieldMatrix& b);

/// dim(rowspace(a) ∩ rowspace(b)) = rank a + rank b - rank [a; b].
std::size_t mat_intersection_dim(const FieldMatrix& a, const FieldMatrix& b);

/// Coefficients c with c * m = target, or nullopt when target is outside the
/// row space. Free coordinates are set to zero, so the answer is unique when
/// m has full row rank.
std::optional<Row> mat_solve_row(const FieldMatrix& m, std::span<const Value> target);

/// Row space kept in reduced echelon form for repeated membership tests.
class RowSpace {
public:
    explicit RowSpace(const FieldMatrix& generators);

    std::size_t dim() const { return pivots_.size(); }
    bool contains(std::span<const Value> v) const;
    const FieldMatrix& basis() const { return basis_; }

private:
    FieldMatrix basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace nec
