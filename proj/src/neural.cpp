#include "genomap/neural.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace genomap::nn {

std::string Architecture::to_string() const {
    return std::to_string(inputs) + "-" + std::to_string(hidden1) + "-" + std::to_string(hidden2) + "-" +
           std::to_string(outputs);
}

Architecture parse_architecture(std::string_view text) {
    std::size_t parts[4];
    std::size_t count = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (count < 4) {
        std::size_t v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{} || v == 0) break;
        parts[count++] = v;
        p = next;
        if (p == end || *p != '-') break;
        ++p;
    }
    if (count != 4 || p != end) {
        throw std::invalid_argument("architecture must look like a-b-c-d with positive sizes, got '" +
                                    std::string(text) + "'");
    }
    return {parts[0], parts[1], parts[2], parts[3]};
}

Task parse_task(std::string_view name) {
    if (name == "f1") return Task::f1;
    if (name == "f2") return Task::f2;
    if (name == "f3") return Task::f3;
    throw std::invalid_argument("unknown regression task '" + std::string(name) + "'");
}

std::string_view task_name(Task task) {
    switch (task) {
        case Task::f1: return "f1";
        case Task::f2: return "f2";
        case Task::f3: return "f3";
    }
    return "?";
}

std::size_t task_inputs(Task task) { return task == Task::f2 ? 2 : 1; }

double task_target(Task task, std::span<const double> input) {
    switch (task) {
        case Task::f1: return 3.0 * std::sin(input[0]) + input[0];
        case Task::f2: return input[0] + input[1];
        case Task::f3: return input[0] * std::sin(input[0]);
    }
    throw std::invalid_argument("unknown regression task");
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double forward(const Architecture& arch, std::span<const double> weights, std::span<const double> input) {
    if (weights.size() != arch.parameter_count()) {
        throw std::invalid_argument("network " + arch.to_string() + " needs " +
                                    std::to_string(arch.parameter_count()) + " parameters, got " +
                                    std::to_string(weights.size()));
    }
    if (input.size() != arch.inputs) {
        throw std::invalid_argument("network input size mismatch");
    }
    if (arch.outputs != 1) {
        throw std::invalid_argument("forward supports single-output networks only");
    }
    // hidden layers are capped so activations fit in stack buffers
    constexpr std::size_t kMaxHidden = 64;
    if (arch.hidden1 > kMaxHidden || arch.hidden2 > kMaxHidden) {
        throw std::invalid_argument("hidden layers are limited to 64 units");
    }
    double h1[kMaxHidden];
    double h2[kMaxHidden];
    const double* w = weights.data();

    const double* b1 = w + arch.hidden1 * arch.inputs;
    for (std::size_t j = 0; j < arch.hidden1; ++j) {
        double z = b1[j];
        for (std::size_t i = 0; i < arch.inputs; ++i) z += w[j * arch.inputs + i] * input[i];
        h1[j] = sigmoid(z);
    }
    w = b1 + arch.hidden1;

    const double* b2 = w + arch.hidden2 * arch.hidden1;
    for (std::size_t j = 0; j < arch.hidden2; ++j) {
        double z = b2[j];
        for (std::size_t i = 0; i < arch.hidden1; ++i) z += w[j * arch.hidden1 + i] * h1[i];
        h2[j] = sigmoid(z);
    }
    w = b2 + arch.hidden2;

    const double* b3 = w + arch.hidden2;
    double y = b3[0];
    for (std::size_t i = 0; i < arch.hidden2; ++i) y += w[i] * h2[i];
    return y;
}

Dataset make_dataset(Task task, std::size_t size, RngStream& rng) {
    if (size < 250 || size > 300) {
        throw std::invalid_argument("dataset size must lie in [250, 300]");
    }
    Dataset data;
    data.samples.reserve(size);
    for (std::size_t k = 0; k < size; ++k) {
        Sample s;
        s.input.resize(task_inputs(task));
        for (double& v : s.input) v = rng.uniform(-5.0, 5.0);
        s.target = task_target(task, s.input);
        data.samples.push_back(std::move(s));
    }
    return data;
}

double nn_fitness(const Architecture& arch, std::span<const double> weights, const Dataset& data) {
    if (data.size() == 0) {
        throw std::invalid_argument("empty dataset");
    }
    double sum = 0.0;
    for (const Sample& s : data.samples) {
        const double err = forward(arch, weights, s.input) - s.target;
        sum += err * err;
    }
    return sum / static_cast<double>(data.size());
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    const std::size_t inputs = data.samples.empty() ? 0 : data.samples.front().input.size();
    for (std::size_t i = 1; i <= inputs; ++i) out << 'x' << i << ',';
    out << "target\n";
    char buf[64];
    auto put = [&](double v) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out.write(buf, end - buf);
    };
    for (const Sample& s : data.samples) {
        for (double v : s.input) {
            put(v);
            out << ',';
        }
        put(s.target);
        out << '\n';
    }
}

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty dataset file");
    }
    std::size_t columns = 1;
    for (char ch : line) columns += ch == ',' ? 1 : 0;
    Dataset data;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(fields, cell, ',')) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw std::invalid_argument("dataset row " + std::to_string(row) + ": bad number '" + cell + "'");
            }
            values.push_back(v);
        }
        if (values.size() != columns) {
            throw std::invalid_argument("dataset row " + std::to_string(row) + ": wrong column count");
        }
        const double target = values.back();
        values.pop_back();
        data.samples.push_back(Sample{std::move(values), target});
    }
    return data;
}

NnProblem::NnProblem(Architecture arch, Dataset data, std::string label)
    : arch_(arch), data_(std::move(data)), label_(std::move(label)) {
    if (data_.size() == 0) {
        throw std::invalid_argument("empty dataset");
    }
    for (const Sample& s : data_.samples) {
        if (s.input.size() != arch_.inputs) {
            throw std::invalid_argument("dataset inputs do not match architecture " + arch_.to_string());
        }
    }
}

double NnProblem::objective(std::span<const double> weights) const {
    return nn_fitness(arch_, weights, data_);
}

}  // namespace genomap::nn
