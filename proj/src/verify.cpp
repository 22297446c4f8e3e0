namespace folia{}
