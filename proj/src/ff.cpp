#include "nec/ff.hpp"

#include <algorithm>
#include <sstream>

#include "nec/errors.hpp"

namespace nec {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
    if (modulus >= (std::uint64_t{1} << 31)) {
        throw UsageError("field modulus " + std::to_string(modulus) + " exceeds 2^31");
    }
    if (!is_prime(modulus)) {
        throw UsageError("field modulus " + std::to_string(modulus) + " is not prime");
    }
}

Value PrimeField::reduce(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<Value>(r);
}

Value PrimeField::add(Value a, Value b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    if (s >= p_) s -= p_;
    return static_cast<Value>(s);
}

Value PrimeField::sub(Value a, Value b) const {
    return a >= b ? a - b : static_cast<Value>(a + p_ - b);
}

Value PrimeField::neg(Value a) const { return a == 0 ? 0 : static_cast<Value>(p_ - a); }

Value PrimeField::mul(Value a, Value b) const {
    return static_cast<Value>((std::uint64_t{a} * b) % p_);
}

Value PrimeField::inv(Value a) const {
    if (a % p_ == 0) throw DomainError("inverse of zero in GF(" + std::to_string(p_) + ")");
    // a^(p-2) by square-and-multiply
    std::uint64_t result = 1;
    std::uint64_t base = a % p_;
    std::uint64_t e = p_ - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % p_;
        base = (base * base) % p_;
        e >>= 1;
    }
    return static_cast<Value>(result);
}

FieldElement::FieldElement(const PrimeField& field, std::int64_t value)
    : field_(field), value_(field.reduce(value)) {}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field())) {
        throw UsageError("field mismatch: GF(" + std::to_string(a.field().modulus()) + ") vs GF(" +
                         std::to_string(b.field().modulus()) + ")");
    }
}

}  // namespace

FieldElement FieldElement::inverse() const { return FieldElement(field_, field_.inv(value_)); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.field_, a.field_.add(a.value_, b.value_));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.field_, a.field_.sub(a.value_, b.value_));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.field_, a.field_.mul(a.value_, b.value_));
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement fe_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement fe_inv(const FieldElement& a) { return a.inverse(); }

// ---------------------------------------------------------------------------

FieldMatrix::FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(const PrimeField& field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : field_(field), rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw UsageError("ragged matrix literal");
        for (auto v : r) data_.push_back(field_.reduce(v));
    }
}

FieldMatrix FieldMatrix::from_rows(const PrimeField& field, std::size_t cols, const std::vector<Row>& rows) {
    FieldMatrix m(field, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

FieldMatrix FieldMatrix::identity(const PrimeField& field, std::size_t n) {
    FieldMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
    data_.at(r * cols_ + c) = field_.reduce(v);
}

std::span<const Value> FieldMatrix::row(std::size_t r) const {
    return std::span<const Value>(data_).subspan(r * cols_, cols_);
}

Row FieldMatrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return Row(s.begin(), s.end());
}

Row FieldMatrix::column_vector(std::size_t c) const {
    Row out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

bool FieldMatrix::row_is_zero(std::size_t r) const { return is_zero(row(r)); }

void FieldMatrix::append_row(std::span<const Value> r) {
    if (r.size() != cols_) throw UsageError("row length " + std::to_string(r.size()) + " != " + std::to_string(cols_));
    for (auto v : r) data_.push_back(static_cast<Value>(v % field_.modulus()));
    ++rows_;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> indices) const {
    FieldMatrix out(field_, 0, cols_);
    out.data_.reserve(indices.size() * cols_);
    for (auto i : indices) {
        if (i >= rows_) throw UsageError("row index out of range");
        out.append_row(row(i));
    }
    return out;
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> indices) const {
    FieldMatrix out(field_, rows_, indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] >= cols_) throw UsageError("column index out of range");
        for (std::size_t r = 0; r < rows_; ++r) out.data_[r * indices.size() + j] = (*this)(r, indices[j]);
    }
    return out;
}

FieldMatrix FieldMatrix::stacked(const FieldMatrix& below) const {
    if (!(field_ == below.field_)) throw UsageError("field mismatch in stack");
    if (cols_ != below.cols_) throw UsageError("column mismatch in stack");
    FieldMatrix out = *this;
    out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
    out.rows_ += below.rows_;
    return out;
}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = (*this)(r, c);
    return out;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (!(a.field_ == b.field_)) throw UsageError("field mismatch in product");
    if (a.cols_ != b.rows_) throw UsageError("shape mismatch in product");
    const auto& f = a.field_;
    FieldMatrix out(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Value aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                auto& dst = out.data_[i * b.cols_ + j];
                dst = f.add(dst, f.mul(aik, b(k, j)));
            }
        }
    }
    return out;
}

std::string FieldMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
        os << "]\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Row row_times(std::span<const Value> x, const FieldMatrix& m) {
    if (x.size() != m.rows()) throw UsageError("row_times: length mismatch");
    const auto& f = m.field();
    Row out(m.cols(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        auto r = m.row(i);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(x[i], r[j]));
    }
    return out;
}

Row row_add(const PrimeField& field, std::span<const Value> a, std::span<const Value> b) {
    if (a.size() != b.size()) throw UsageError("row_add: length mismatch");
    Row out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.add(a[i], b[i]);
    return out;
}

Row row_sub(const PrimeField& field, std::span<const Value> a, std::span<const Value> b) {
    if (a.size() != b.size()) throw UsageError("row_sub: length mismatch");
    Row out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.sub(a[i], b[i]);
    return out;
}

bool is_zero(std::span<const Value> v) {
    return std::all_of(v.begin(), v.end(), [](Value x) { return x == 0; });
}

namespace {

// In-place reduced row echelon form with first-nonzero pivoting.
// Returns the pivot column of each nonzero row, in order.
std::vector<std::size_t> rref(std::vector<Row>& rows, std::size_t cols, const PrimeField& f) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
        std::size_t pivot = lead;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[lead], rows[pivot]);
        const Value scale = f.inv(rows[lead][c]);
        for (auto& v : rows[lead]) v = f.mul(v, scale);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][c] == 0) continue;
            const Value factor = rows[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[lead][k]));
            }
        }
        pivots.push_back(c);
        ++lead;
    }
    rows.resize(lead);
    return pivots;
}

std::vector<Row> rows_of(const FieldMatrix& m) {
    std::vector<Row> out;
    out.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row_vector(r));
    return out;
}

}  // namespace

std::size_t mat_rank(const FieldMatrix& m) {
    auto rows = rows_of(m);
    return rref(rows, m.cols(), m.field()).size();
}

FieldMatrix left_nullspace(const FieldMatrix& m) {
    // x * m = 0  <=>  m^T x^T = 0; solve via RREF of m^T.
    const auto& f = m.field();
    const std::size_t n = m.rows();
    auto t = rows_of(m.transposed());
    auto pivots = rref(t, n, f);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;

    FieldMatrix basis(f, 0, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Row x(n, 0);
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(t[r][free]);
        basis.append_row(x);
    }
    return basis;
}

FieldMatrix intersection_basis(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.cols()) throw UsageError("intersection: column mismatch");
    const auto& f = a.field();
    // (u, v) with u a + v b = 0 yields u a ∈ rowspace(a) ∩ rowspace(b).
    auto null = left_nullspace(a.stacked(b));
    FieldMatrix spanning(f, 0, a.cols());
    for (std::size_t r = 0; r < null.rows(); ++r) {
        auto u = null.row(r).first(a.rows());
        spanning.append_row(row_times(u, a));
    }
    return RowSpace(spanning).basis();
}

std::size_t mat_intersection_dim(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.cols()) throw UsageError("intersection: column mismatch");
    if (!(a.field() == b.field())) throw UsageError("intersection: field mismatch");
    return mat_rank(a) + mat_rank(b) - mat_rank(a.stacked(b));
}

std::optional<Row> mat_solve_row(const FieldMatrix& m, std::span<const Value> target) {
    if (target.size() != m.cols()) throw UsageError("solve_row: target length mismatch");
    const auto& f = m.field();
    const std::size_t n = m.rows();
    // Augmented system [m^T | target^T] in the unknowns c_0..c_{n-1}.
    std::vector<Row> aug;
    aug.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Row r(n + 1);
        for (std::size_t i = 0; i < n; ++i) r[i] = m(i, j);
        r[n] = static_cast<Value>(target[j] % f.modulus());
        aug.push_back(std::move(r));
    }
    auto pivots = rref(aug, n + 1, f);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    Row c(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) c[pivots[r]] = aug[r][n];
    return c;
}

RowSpace::RowSpace(const FieldMatrix& generators) : basis_(generators.field(), 0, generators.cols()) {
    auto rows = rows_of(generators);
    pivots_ = rref(rows, generators.cols(), generators.field());
    for (const auto& r : rows) basis_.append_row(r);
}

bool RowSpace::contains(std::span<const Value> v) const {
    if (v.size() != basis_.cols()) throw UsageError("RowSpace::contains: length mismatch");
    const auto& f = basis_.field();
    Row residual(v.begin(), v.end());
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        const Value coeff = residual[pivots_[r]];
        if (coeff == 0) continue;
        auto b = basis_.row(r);
        for (std::size_t k = 0; k < residual.size(); ++k) residual[k] = f.sub(residual[k], f.mul(coeff, b[k]));
    }
    return is_zero(residual);
}

}  // namespace nec
