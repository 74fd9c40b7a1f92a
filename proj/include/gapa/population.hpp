#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gapa {

enum class Direction { Maximize, Minimize };

// s x k matrix of gene ids, row-major. The unit every operator transforms.
struct PopulationMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int32_t> data;

    PopulationMatrix() = default;
    PopulationMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

    std::int32_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    std::int32_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::span<std::int32_t> row(int r) { return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)}; }
    std::span<const std::int32_t> row(int r) const { return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)}; }

    // Copy of rows [first, last).
    PopulationMatrix slice(int first, int last) const {
        PopulationMatrix out(last - first, cols);
        std::copy(data.begin() + static_cast<std::size_t>(first) * cols,
                  data.begin() + static_cast<std::size_t>(last) * cols, out.data.begin());
        return out;
    }

    void assign_rows(int first, const PopulationMatrix& block) {
        std::copy(block.data.begin(), block.data.end(),
                  data.begin() + static_cast<std::size_t>(first) * cols);
    }

    bool operator==(const PopulationMatrix& other) const = default;
};

// s x k binary matrix realizing a crossover or mutation rate.
struct MaskMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> data;

    MaskMatrix() = default;
    MaskMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

    std::uint8_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    std::uint8_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    double ones_fraction() const {
        if (data.empty()) return 0.0;
        std::size_t ones = 0;
        for (auto b : data) ones += b;
        return static_cast<double>(ones) / static_cast<double>(data.size());
    }
};

using FitnessVector = std::vector<double>;

}  // namespace gapa
