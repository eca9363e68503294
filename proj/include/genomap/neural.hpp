#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genomap/problem.hpp"

namespace genomap::nn {

/// a-b-c-d: inputs, two sigmoid hidden layers, linear outputs.
struct Architecture {
    std::size_t inputs;
    std::size_t hidden1;
    std::size_t hidden2;
    std::size_t outputs;

    /// Weights plus biases of all three layers.
    std::size_t parameter_count() const noexcept {
        return inputs * hidden1 + hidden1 + hidden1 * hidden2 + hidden2 + hidden2 * outputs + outputs;
    }
    std::string to_string() const;

    friend bool operator==(const Architecture&, const Architecture&) = default;
};

Architecture parse_architecture(std::string_view text);

enum class Task { f1, f2, f3 };

Task parse_task(std::string_view name);
std::string_view task_name(Task task);
std::size_t task_inputs(Task task);
/// f1 = 3 sin x + x, f2 = x + y, f3 = x sin x
double task_target(Task task, std::span<const double> input);

struct Sample {
    std::vector<double> input;
    double target;
};

struct Dataset {
    std::vector<Sample> samples;

    std::size_t size() const noexcept { return samples.size(); }
};

inline constexpr std::size_t kDefaultDatasetSize = 275;

double sigmoid(double z);

/// Single network output. Genome order: W1 (hidden1 x inputs, row-major),
/// b1, W2 (hidden2 x hidden1), b2, W3 (outputs x hidden2), b3.
double forward(const Architecture& arch, std::span<const double> weights, std::span<const double> input);

/// Inputs uniform on [-5, 5]; size must lie in [250, 300].
Dataset make_dataset(Task task, std::size_t size, RngStream& rng);

/// Mean squared error over the dataset.
double nn_fitness(const Architecture& arch, std::span<const double> weights, const Dataset& data);

void write_dataset_csv(std::ostream& out, const Dataset& data);
Dataset read_dataset_csv(std::istream& in);

class NnProblem final : public Problem {
public:
    NnProblem(Architecture arch, Dataset data, std::string label);

    std::size_t dimension() const override { return arch_.parameter_count(); }
    Bounds bounds() const override { return Bounds(-5.0, 5.0); }
    std::string name() const override { return label_; }

    const Architecture& architecture() const noexcept { return arch_; }
    const Dataset& dataset() const noexcept { return data_; }

protected:
    double objective(std::span<const double> weights) const override;

private:
    Architecture arch_;
    Dataset data_;
    std::string label_;
};

}  // namespace genomap::nn
