#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lipint/errors.hpp"
#include "lipint/format.hpp"

namespace lipint {

/// Append-only collection of (input vector, noisy output) pairs.
///
/// Inputs are stored row-major in one flat buffer; queries scan it linearly.
/// Duplicate inputs are retained (no deduplication), appends never disturb
/// existing entries.
class SampleSet {
public:
    explicit SampleSet(std::size_t dim) : dim_(dim) {
        if (dim == 0) throw input_error("SampleSet: dimension must be >= 1");
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return outputs_.size(); }
    bool empty() const { return outputs_.empty(); }

    void add(std::span<const double> s, double y) {
        if (s.size() != dim_)
            throw input_error("SampleSet::add: input has length " + std::to_string(s.size()) +
                              ", expected " + std::to_string(dim_));
        inputs_.insert(inputs_.end(), s.begin(), s.end());
        outputs_.push_back(y);
    }

    void add(std::initializer_list<double> s, double y) {
        add(std::span<const double>(s.begin(), s.size()), y);
    }

    std::span<const double> input(std::size_t i) const {
        return {inputs_.data() + i * dim_, dim_};
    }
    double output(std::size_t i) const { return outputs_[i]; }

    const std::vector<double>& raw_inputs() const { return inputs_; }
    const std::vector<double>& outputs() const { return outputs_; }

    bool operator==(const SampleSet& other) const = default;

    // CSV schema: header "x0,...,x{d-1},y", one row per sample, '.' decimal
    // point, UTF-8.
    std::string to_csv() const {
        std::string out;
        for (std::size_t j = 0; j < dim_; ++j)
            out += "x" + std::to_string(j) + ",";
        out += "y\n";
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = 0; j < dim_; ++j)
                out += format_double(inputs_[i * dim_ + j]) + ",";
            out += format_double(outputs_[i]) + "\n";
        }
        return out;
    }

    static SampleSet from_csv(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line))
            throw input_error("SampleSet CSV: empty document");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto header = split(line);
        if (header.size() < 2 || header.back() != "y")
            throw input_error("SampleSet CSV: header must be x0,...,x{d-1},y");
        const std::size_t d = header.size() - 1;
        for (std::size_t j = 0; j < d; ++j)
            if (header[j] != "x" + std::to_string(j))
                throw input_error("SampleSet CSV: unexpected header column '" + header[j] + "'");
        SampleSet set(d);
        std::vector<double> row(d);
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto cells = split(line);
            if (cells.size() != d + 1)
                throw input_error("SampleSet CSV: line " + std::to_string(lineno) + " has " +
                                  std::to_string(cells.size()) + " fields, expected " +
                                  std::to_string(d + 1));
            for (std::size_t j = 0; j < d; ++j) row[j] = parse_double(cells[j]);
            set.add(row, parse_double(cells[d]));
        }
        return set;
    }

    void save_csv(const std::filesystem::path& path) const { atomic_write_file(path, to_csv()); }
    static SampleSet load_csv(const std::filesystem::path& path) { return from_csv(read_file(path)); }

private:
    static std::vector<std::string> split(const std::string& line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        return cells;
    }

    std::size_t dim_;
    std::vector<double> inputs_;   // row-major, size() * dim_
    std::vector<double> outputs_;
};

/// Sample set with vector-valued outputs; component j behaves exactly like a
/// scalar SampleSet over the j-th output coordinate.
class MultiOutputSampleSet {
public:
    MultiOutputSampleSet(std::size_t dim_in, std::size_t dim_out)
        : dim_in_(dim_in), dim_out_(dim_out) {
        if (dim_in == 0 || dim_out == 0)
            throw input_error("MultiOutputSampleSet: dimensions must be >= 1");
    }

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    void add(std::span<const double> s, std::span<const double> y) {
        if (s.size() != dim_in_)
            throw input_error("MultiOutputSampleSet::add: input length mismatch");
        if (y.size() != dim_out_)
            throw input_error("MultiOutputSampleSet::add: output length mismatch");
        inputs_.insert(inputs_.end(), s.begin(), s.end());
        outputs_.insert(outputs_.end(), y.begin(), y.end());
        ++count_;
    }

    std::span<const double> input(std::size_t i) const {
        return {inputs_.data() + i * dim_in_, dim_in_};
    }
    std::span<const double> output(std::size_t i) const {
        return {outputs_.data() + i * dim_out_, dim_out_};
    }

    SampleSet component(std::size_t j) const {
        if (j >= dim_out_) throw input_error("MultiOutputSampleSet::component: index out of range");
        SampleSet set(dim_in_);
        for (std::size_t i = 0; i < count_; ++i)
            set.add(input(i), outputs_[i * dim_out_ + j]);
        return set;
    }

private:
    std::size_t dim_in_;
    std::size_t dim_out_;
    std::size_t count_ = 0;
    std::vector<double> inputs_;
    std::vector<double> outputs_;
};

} // namespace lipint
