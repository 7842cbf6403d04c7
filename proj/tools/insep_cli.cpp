#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "insep/cli/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Embedding dimension and p-degree computations over F_p(t)"};
    std::string input, format = "text";
    insep::cli::RunOptions opt;
    app.add_option("--input", input, "session file (stdin when omitted)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--strict", opt.strict, "abort on the first failed bound or oracle clause");
    app.add_option("--cap", opt.cap, "largest algebra dimension the structure oracle expands")
        ->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return insep::cli::kInputError;
    }

    std::string text;
    if (input.empty()) {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(input, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open " << input << "\n";
            return insep::cli::kInputError;
        }
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    const auto fmt = format == "json" ? insep::cli::Format::Json : insep::cli::Format::Text;
    return insep::cli::run_text(text, opt, fmt, std::cout, std::cerr);
}
