#include <iostream>

int main() {
    std::cout << "commcert CLI placeholder\n";
    return 0;
}
