#pragma once

// Generated by tools/oracle/gen_boundary_oracle.py (mpmath, 50 digits).

#include <cstdint>

namespace oracle {

struct HalfWidth {
    std::uint64_t t;
    double vhat, alpha, rho, value;
};

inline constexpr HalfWidth kHalfWidth[] = {
    {1ULL, 0, 0.5, 1, 1.177410022515474691},
    {1ULL, 0, 0.001, 0.5, 7.0521520693103972791},
    {1ULL, 0.0001, 0.05, 0.06, 36.498830267992175304},
    {1ULL, 0.04, 0.5, 3, 0.48333086275437416966},
    {1ULL, 0.04, 1e-8, 0.0788, 75.57330016229928239},
    {1ULL, 0.25, 0.001, 0.06, 58.796496260922052239},
    {1ULL, 1, 0.1, 3, 2.504243745593916934},
    {1ULL, 3.5, 0.5, 0.0788, 15.161846978880760452},
    {1ULL, 3.5, 1e-8, 1, 12.896361907176683607},
    {1ULL, 100, 0.05, 3, 33.805341342001044225},
    {2ULL, 0, 0.1, 0.0788, 12.011538533152572435},
    {2ULL, 0.0001, 0.5, 1, 0.58878511200850009001},
    {2ULL, 0.0001, 0.001, 0.5, 3.5261712613297965119},
    {2ULL, 0.04, 0.05, 0.06, 18.252537096987713021},
    {2ULL, 0.25, 0.1, 1, 1.2134961905087389257},
    {2ULL, 0.25, 1e-8, 0.5, 6.3260933027558788309},
    {2ULL, 1, 0.001, 0.06, 29.498049359891590214},
    {2ULL, 3.5, 0.1, 3, 3.6337049677603749765},
    {2ULL, 100, 0.5, 0.5, 14.624995590378717573},
    {2ULL, 100, 1e-8, 0.06, 65.572009447390617474},
    {7ULL, 0, 0.05, 3, 0.10428234986524156025},
    {7ULL, 0.0001, 0.1, 0.0788, 3.4318773452572271585},
    {7ULL, 0.04, 0.5, 0.06, 2.8052793435612595253},
    {7ULL, 0.04, 0.001, 3, 0.33056031715139077856},
    {7ULL, 0.25, 0.05, 0.0788, 3.9957405989880341177},
    {7ULL, 1, 0.1, 1, 0.94198770240807078204},
    {7ULL, 1, 1e-8, 0.5, 2.8611876679435722817},
    {7ULL, 3.5, 0.001, 0.0788, 6.9003798921771962087},
    {7ULL, 100, 0.05, 1, 12.638471907127572279},
    {30ULL, 0, 0.5, 0.5, 0.078494001501031646067},
    {30ULL, 0, 1e-8, 0.06, 3.3080087613331753931},
    {30ULL, 0.0001, 0.001, 1, 0.11772619052400918876},
    {30ULL, 0.04, 0.1, 0.5, 0.14826132969129373776},
    {30ULL, 0.25, 0.5, 0.06, 0.66607624315176010463},
    {30ULL, 0.25, 0.001, 3, 0.37531427537400537041},
    {30ULL, 1, 0.05, 0.5, 0.50731461682276881664},
    {30ULL, 3.5, 0.1, 0.06, 1.2803149300057986528},
    {30ULL, 3.5, 1e-8, 3, 2.2228531041554030568},
    {30ULL, 100, 0.001, 0.0788, 7.356215347117748816},
    {250ULL, 0, 0.05, 1, 0.0087597173886802910606},
    {250ULL, 0.0001, 0.5, 3, 0.0018015616598370437392},
    {250ULL, 0.0001, 1e-8, 0.0788, 0.30227872881529700712},
    {250ULL, 0.04, 0.001, 1, 0.051086043286492885248},
    {250ULL, 0.25, 0.1, 0.5, 0.080731599397400531715},
    {250ULL, 1, 0.5, 0.0788, 0.11205433100341869872},
    {250ULL, 1, 1e-8, 1, 0.40568185637869075118},
    {250ULL, 3.5, 0.05, 0.5, 0.37522821061902785646},
    {250ULL, 100, 0.1, 0.06, 1.7728598646138143115},
    {1000ULL, 0, 0.5, 1, 0.001177410022515474691},
    {1000ULL, 0, 0.001, 0.5, 0.0070521520693103972791},
    {1000ULL, 0.0001, 0.05, 0.06, 0.036506637008829588648},
    {1000ULL, 0.04, 0.5, 3, 0.015502396594311838127},
    {1000ULL, 0.04, 1e-8, 0.0788, 0.084691611079980110909},
    {1000ULL, 0.25, 0.001, 0.06, 0.083067146168188198326},
    {1000ULL, 1, 0.1, 3, 0.11103849909833009821},
    {1000ULL, 3.5, 0.5, 0.0788, 0.11327215163102312403},
    {1000ULL, 3.5, 1e-8, 1, 0.39076740465461391968},
    {1000ULL, 100, 0.05, 3, 1.3533496406058393627},
    {4321ULL, 0, 0.1, 0.0788, 0.0055596105221719844641},
    {4321ULL, 0.0001, 0.5, 1, 0.00034745068489898206837},
    {4321ULL, 0.0001, 0.001, 0.5, 0.0017250152114229732677},
    {4321ULL, 0.04, 0.05, 0.06, 0.011245820891983383239},
    {4321ULL, 0.25, 0.1, 1, 0.024324160936949302823},
    {4321ULL, 0.25, 1e-8, 0.5, 0.048828823294204303294},
    {4321ULL, 1, 0.001, 0.06, 0.06126121253739549301},
    {4321ULL, 3.5, 0.1, 3, 0.11037854899857996458},
    {4321ULL, 100, 0.5, 0.5, 0.51804535343407402248},
    {4321ULL, 100, 1e-8, 0.06, 0.99562591482371766595},
    {20000ULL, 0, 0.05, 3, 0.000036498822452834546086},
    {20000ULL, 0.0001, 0.1, 0.0788, 0.0012103234113199911413},
    {20000ULL, 0.04, 0.5, 0.06, 0.0024219258672110776082},
    {20000ULL, 0.04, 0.001, 3, 0.0065290425656378025978},
    {20000ULL, 0.25, 0.05, 0.0788, 0.01022773945534845214},
    {20000ULL, 1, 0.1, 1, 0.025618251303066425273},
    {20000ULL, 1, 1e-8, 0.5, 0.046894165303814251151},
    {20000ULL, 3.5, 0.001, 0.0788, 0.056974103103484101171},
    {20000ULL, 100, 0.05, 1, 0.30914381279445191552},
    {1000000ULL, 0, 0.5, 0.5, 2.354820045030949382e-6},
    {1000000ULL, 0, 1e-8, 0.06, 0.000099240262839995261793},
    {1000000ULL, 0.0001, 0.001, 1, 0.000041491182238944035992},
    {1000000ULL, 0.04, 0.1, 0.5, 0.00070525329715738250574},
    {1000000ULL, 0.25, 0.5, 0.06, 0.0013111713624892748837},
    {1000000ULL, 0.25, 0.001, 3, 0.0026007533575327477895},
    {1000000ULL, 1, 0.05, 0.5, 0.0041273306726250245886},
    {1000000ULL, 3.5, 0.1, 0.06, 0.0066578828351931103589},
    {1000000ULL, 3.5, 1e-8, 3, 0.013583886935483860054},
    {1000000ULL, 100, 0.001, 0.0788, 0.050762447302706487646},
    {1000000000ULL, 0, 0.05, 1, 2.1899293471700727652e-9},
    {1000000000ULL, 0.0001, 0.5, 3, 1.1709941700480535158e-6},
    {1000000000ULL, 0.0001, 1e-8, 0.0788, 2.0483011407199472599e-6},
    {1000000000ULL, 0.04, 0.001, 1, 0.000034602663258609554239},
    {1000000000ULL, 0.25, 0.1, 0.5, 0.00007274888983704606349},
    {1000000000ULL, 1, 0.5, 0.0788, 0.00012506952626583749637},
    {1000000000ULL, 1, 1e-8, 1, 0.00023701968909968397256},
    {1000000000ULL, 3.5, 0.05, 0.5, 0.00029695486184796452022},
    {1000000000ULL, 100, 0.1, 0.06, 0.0015139521644513218895},
    {1ULL, 0, 0.5, 1, 1.177410022515474691},
    {1000ULL, 0.25, 0.1, 0.06, 0.046697133423985977513},
    {1000ULL, 0.25, 0.05, 0.06, 0.053321575494489505726},
    {5000ULL, 0.04, 0.001, 0.5, 0.011554681787206188589},
};

struct Rho {
    std::uint64_t t_star;
    double alpha, value;
};

inline constexpr Rho kRho[] = {
    {750ULL, 0.1, 0.078811543361076123277},
    {1294ULL, 0.1, 0.060000286740788855161},
    {1ULL, 0.1, 2.1583430045328954784},
    {100ULL, 0.001, 0.38764221704511276765},
    {250ULL, 0.05, 0.15910826006585876518},
    {1000000ULL, 0.49, 0.00028287077189419337175},
    {42ULL, 1e-6, 0.83878578262479732644},
    {5000ULL, 0.25, 0.021241638577623123107},
    {80ULL, 0.001, 0.43339717413079990503},
    {9999ULL, 0.01, 0.031626771507309266528},
};

struct NormalCdf {
    double z, value;
};

inline constexpr NormalCdf kNormalCdf[] = {
    {0, 0.5},
    {3.1622776601683793, 0.99921729887099872508},
    {-3.1622776601683793, 0.00078270112900127492476},
    {1, 0.84134474606854294859},
    {-1, 0.15865525393145705141},
    {-8, 6.2209605742717841235e-16},
    {8, 0.9999999999999993779},
    {-20, 2.7536241186062336951e-89},
    {0.5, 0.69146246127401310364},
    {-37, 5.7255712225245768227e-300},
};

} // namespace oracle
