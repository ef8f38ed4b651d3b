#include "prepro/quotient.hpp"
#include "prepro/series.hpp"
#include "prepro/repvar.hpp"
#include "prepro/cache.hpp"
int main(){return 0;}
